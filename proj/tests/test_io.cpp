#include <gtest/gtest.h>

#include <sstream>

#include "infodep/datagen.hpp"
#include "infodep/io.hpp"

using namespace infodep;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

SampleTable table_from(const std::string& text, const TableHints& hints = {}) {
  std::istringstream in(text);
  return read_table_csv(in, "mem", hints);
}

CurveSetd curves_from(const std::string& text, bool uniform = false) {
  std::istringstream in(text);
  return read_curves_csv(in, "mem", {uniform});
}

}  // namespace

TEST(ReadTable, SmallMixedTable) {
  const auto t = table_from("y,x\n0,a\n1,b\n1,a\n");
  EXPECT_EQ(t.n(), 3u);
  EXPECT_EQ(t.column("y").kind(), ColumnKind::Numeric);
  EXPECT_EQ(t.column("x").kind(), ColumnKind::Categorical);
  EXPECT_EQ(t.column("x").categorical()[1], "b");
}

TEST(ReadTable, QuotesCrlfAndHints) {
  const auto t = table_from("name,v\r\n\"a,b\",1\r\n\"say \"\"hi\"\"\",2\r\n", {{"v"}});
  EXPECT_EQ(t.column("name").categorical()[0], "a,b");
  EXPECT_EQ(t.column("name").categorical()[1], "say \"hi\"");
  EXPECT_EQ(t.column("v").kind(), ColumnKind::Categorical);
}

TEST(ReadTable, Rejections) {
  EXPECT_EQ(kind_of([] { table_from("y,x\n0,a\nNaN,b\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { table_from("y\n1\ninf\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { table_from(""); }), ErrorKind::EmptyFile);
  EXPECT_EQ(kind_of([] { table_from("y,x\n"); }), ErrorKind::EmptyFile);
  EXPECT_EQ(kind_of([] { table_from("y,x\n1\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { table_from("y,x\n1,\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { table_from("y,x\n1,\"open\n"); }), ErrorKind::ParseError);
  try {
    table_from("y,x\n0,a\n1,b\nnan,c\n");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("mem:4:1"), std::string::npos) << e.what();
  }
}

TEST(ReadTable, TextNanInCategoricalColumnIsFine) {
  const auto t = table_from("x\nNaN\nfoo\n");
  EXPECT_EQ(t.column("x").kind(), ColumnKind::Categorical);
}

TEST(WriteTable, DatagenRoundTrip) {
  for (const auto& t : {gen_bivariate_normal(0.3, 500, 1), gen_mcar({1.0, 2.0, 0.4}, 500, 2)}) {
    std::ostringstream out;
    write_table_csv(t, out);
    EXPECT_TRUE(table_from(out.str()) == t);
  }
  SampleTable mixed;
  mixed.add_numeric("v", {1e-300, -0.1, 12345678.9});
  mixed.add_categorical("c", {"a,b", "x\"y", "plain"});
  std::ostringstream out;
  write_table_csv(mixed, out);
  EXPECT_TRUE(table_from(out.str()) == mixed);
}

TEST(ReadCurves, GridRowAndUniformFlag) {
  const auto c = curves_from("0,0.25,0.5,1\n1,2,3,4\n5,6,7,8\n9,9,9,9\n");
  EXPECT_EQ(c.n(), 3);
  EXPECT_EQ(c.m(), 4);
  EXPECT_EQ(c.grid()(1), 0.25);

  std::ostringstream wide;
  for (int i = 0; i < 5; ++i) {
    for (int a = 0; a < 1440; ++a) wide << (a ? "," : "") << (i + a * 0.001);
    wide << "\n";
  }
  const auto u = curves_from(wide.str(), true);
  EXPECT_EQ(u.n(), 5);
  EXPECT_EQ(u.m(), 1440);
  EXPECT_DOUBLE_EQ(u.grid()(1439), 1.0);
}

TEST(ReadCurves, Rejections) {
  EXPECT_EQ(kind_of([] { curves_from("0,0.3,0.6,1\n1,2,3,4\n1,2,3\n1,2,3,4\n"); }), ErrorKind::RaggedRows);
  EXPECT_EQ(kind_of([] { curves_from("0,0.6,0.3,1\n1,2,3,4\n1,2,3,4\n1,2,3,4\n"); }), ErrorKind::GridNotIncreasing);
  EXPECT_EQ(kind_of([] { curves_from("0,0.3,0.6,1\n1,x,3,4\n1,2,3,4\n1,2,3,4\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { curves_from(""); }), ErrorKind::EmptyFile);
}

TEST(Curves, WriteReadRoundTripAndResample) {
  const auto p = gen_flm_pair({6, 12, {1, 1}, {1, 1}, 0.3, 4});
  std::ostringstream out;
  write_curves_csv(p.y, out);
  const auto back = curves_from(out.str());
  EXPECT_EQ(back.values(), p.y.values());
  EXPECT_EQ(back.grid(), p.y.grid());

  // A linear curve is reproduced exactly by interpolation.
  Eigen::VectorXd g(5);
  g << 0.0, 0.1, 0.45, 0.8, 1.0;
  Eigen::MatrixXd v(3, 5);
  for (int i = 0; i < 3; ++i) v.row(i) = (2.0 * g.array() * (i + 1) - 1.0).matrix().transpose();
  const auto r = resample_linear(CurveSetd(g, v), CurveSetd::uniform_grid(9));
  for (int i = 0; i < 3; ++i)
    for (Eigen::Index a = 0; a < 9; ++a) EXPECT_NEAR(r.values()(i, a), 2.0 * r.grid()(a) * (i + 1) - 1.0, 1e-14);
}

TEST(Pmf, ReadWriteAndCounts) {
  std::istringstream in("x,y,prob\na,1,0.4\na,0,0.1\nb,0,0.4\nb,1,0.1\n");
  const auto j = read_pmf_csv(in, "mem");
  EXPECT_EQ(j.x_labels(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(j.y_labels(), (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(j.probs()(0, 1), 0.4);
  ASSERT_TRUE(j.y_codes());
  std::ostringstream out;
  write_pmf_csv(j, out);
  std::istringstream again(out.str());
  EXPECT_EQ(read_pmf_csv(again, "mem").probs(), j.probs());

  std::istringstream counts("x,y,count\nu,lo,40\nu,hi,10\nv,lo,10\nv,hi,40\n");
  const auto c = read_pmf_csv(counts, "mem");
  EXPECT_FALSE(c.y_codes());
  EXPECT_EQ(c.probs()(0, 0), 0.4);

  std::istringstream bad("x,y,p\na,b,1\n");
  EXPECT_EQ(kind_of([&] { read_pmf_csv(bad, "mem"); }), ErrorKind::ParseError);
  std::istringstream unnormalized("x,y,prob\na,0,0.5\nb,0,0.6\n");
  EXPECT_EQ(kind_of([&] { read_pmf_csv(unnormalized, "mem"); }), ErrorKind::InvalidArgument);
}
