#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "latdist/io.hpp"

using namespace latdist;

namespace {

std::size_t error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_plain_matrix(in, "mem");
  } catch (const parse_error& e) {
    EXPECT_EQ(e.source(), "mem");
    return e.line();
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return 0;
}

std::size_t alist_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_alist(in, "mem", Field::prime(2));
  } catch (const parse_error& e) {
    return e.line();
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return 0;
}

std::string data(const std::string& name) { return std::string(LATDIST_DATA_DIR) + "/" + name; }

}  // namespace

TEST(PlainMatrix, ReadsWithCommentsAndBlanks) {
  std::istringstream in("# comment\n\n2 3 3\n0 1 2\n# mid\n2 2 0\n");
  const auto m = read_plain_matrix(in, "mem");
  EXPECT_EQ(m.rows, 2u);
  EXPECT_EQ(m.cols, 3u);
  ASSERT_TRUE(m.q);
  EXPECT_EQ(*m.q, 3u);
  EXPECT_EQ(m.entries[1][1], 2);
  const auto s = to_symbols(m, Field::prime(3), "mem");
  EXPECT_EQ(s, (SymbolMatrix{{0, 1, 2}, {2, 2, 0}}));
}

TEST(PlainMatrix, IntegerMatrices) {
  std::istringstream in("2 2\n-5 123456789012345678901234567890\n+3 0\n");
  const auto m = read_plain_matrix(in, "mem");
  EXPECT_FALSE(m.q);
  EXPECT_EQ(m.entries[0][0], -5);
  EXPECT_EQ(m.entries[0][1], Integer("123456789012345678901234567890"));
  EXPECT_EQ(m.entries[1][0], 3);
}

TEST(PlainMatrix, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line(""), 1u);
  EXPECT_EQ(error_line("2 2 2\n0 1\n1 1 1\n"), 3u);
  EXPECT_EQ(error_line("2 2 2\n0 1\n\n# x\n1 5\n"), 5u);
  EXPECT_EQ(error_line("2 2 2\n0 x\n1 1\n"), 2u);
  EXPECT_EQ(error_line("1 2 2\n0 1\n1 1\n"), 3u);
  EXPECT_EQ(error_line("0 2 2\n"), 1u);
  EXPECT_EQ(error_line("2 2\n1 1\n"), 2u);
  EXPECT_EQ(error_line("a b c\n"), 1u);
}

TEST(PlainMatrix, FieldMismatch) {
  std::istringstream in("1 2 3\n1 2\n");
  const auto m = read_plain_matrix(in, "mem");
  EXPECT_THROW(to_symbols(m, Field::prime(2), "mem"), parse_error);
  std::istringstream in2("1 2 0\n1 2\n");
  const auto m2 = read_plain_matrix(in2, "mem");
  try {
    to_symbols(m2, Field::prime(2), "mem");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(PlainMatrix, WriteReadRoundTrip) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<Integer>> rows(1 + rng() % 5, std::vector<Integer>(1 + rng() % 5));
    for (auto& r : rows)
      for (auto& x : r) x = static_cast<long long>(rng() % 2001) - 1000;
    std::ostringstream out;
    write_plain_matrix(out, rows);
    std::istringstream in(out.str());
    EXPECT_EQ(read_plain_matrix(in, "mem").entries, rows);
  }
  const SymbolMatrix s{{1, 0, 2}, {2, 1, 1}};
  std::ostringstream out;
  write_plain_matrix(out, s, 3);
  std::istringstream in(out.str());
  EXPECT_EQ(to_symbols(read_plain_matrix(in, "mem"), Field::prime(3), "mem"), s);
}

TEST(PlainMatrix, DataFiles) {
  std::ifstream in(data("golay11.txt"));
  ASSERT_TRUE(in);
  const auto g = to_symbols(read_plain_matrix(in, "golay11.txt"), Field::prime(3), "golay11.txt");
  EXPECT_EQ(g, testutil::golay_generator());
}

TEST(Alist, Hamming) {
  std::ifstream in(data("hamming74.alist"));
  ASSERT_TRUE(in);
  const auto h = read_alist(in, "hamming74.alist", Field::prime(2));
  EXPECT_EQ(h, (SymbolMatrix{{1, 1, 0, 1, 1, 0, 0}, {1, 0, 1, 1, 0, 1, 0}, {0, 1, 1, 1, 0, 0, 1}}));
  const auto c = LinearCode::from_parity(Field::prime(2), h);
  EXPECT_EQ(c.k(), 4u);
  EXPECT_EQ(brute_force_distance(c).distance, 3u);
}

TEST(Alist, Nonbinary) {
  std::istringstream in("3 1 3\n1 3\n1 1 1\n3\n1 1\n1 2\n1 1\n1 1 2 2 3 1\n");
  const auto h = read_alist(in, "mem", Field::prime(3));
  EXPECT_EQ(h, (SymbolMatrix{{1, 2, 1}}));
}

TEST(Alist, Errors) {
  const std::string good = "3 1\n1 3\n1 1 1\n3\n1\n1\n1\n1 2 3\n";
  {
    std::istringstream in(good);
    EXPECT_EQ(read_alist(in, "mem", Field::prime(2)), (SymbolMatrix{{1, 1, 1}}));
  }
  EXPECT_EQ(alist_error_line("3 1\n1 3\n1 1 1\n3\n1\n1\n2\n1 2 3\n"), 7u);
  EXPECT_EQ(alist_error_line("3 1\n1 3\n1 1 1\n3\n1\n1\n1\n1 2\n"), 8u);
  EXPECT_EQ(alist_error_line("3 1\n1 3\n1 1 1\n3\n1\n1\n1\n1 2 3\n9\n"), 9u);
  EXPECT_EQ(alist_error_line("3 1\n1 3\n1 1 1\n3\n1\n1\n"), 6u);
  EXPECT_EQ(alist_error_line("3 1\n1 3\n1 1 1\n3\n1\n1\n1\n1 2 2\n"), 8u);
}
