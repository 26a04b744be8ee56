#pragma once

#include "latdist/error.hpp"
#include "latdist/matrix.hpp"
#include "latdist/gf.hpp"
#include "latdist/code.hpp"
#include "latdist/integer.hpp"
#include "latdist/io.hpp"
#include "latdist/gso.hpp"
#include "latdist/enumeration.hpp"
#include "latdist/lattice.hpp"
#include "latdist/svp.hpp"
#include "latdist/embed.hpp"
#include "latdist/distance.hpp"
#include "latdist/report.hpp"
