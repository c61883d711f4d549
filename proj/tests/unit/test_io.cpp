#include <sstream>

#include <gtest/gtest.h>

#include "hypergon/io.hpp"
#include "hypergon/random.hpp"

using namespace hypergon;

namespace {

io::Json reparse(const io::Json& j) {
  std::istringstream in(io::dump(j));
  return io::parse_json(in);
}

}  // namespace

TEST(Io, DoublesRoundTripExactly) {
  random::Rng rng(121);
  std::normal_distribution<double> g;
  for (int i = 0; i < 1000; ++i) {
    const double x = g(rng) * std::pow(10.0, static_cast<int>(g(rng) * 5));
    EXPECT_EQ(std::stod(io::format_double(x)), x);
  }
}

TEST(Io, PointsInEveryModel) {
  random::Rng rng(122);
  for (auto m : {hyp3::Model::Ball, hyp3::Model::HalfSpace, hyp3::Model::Hyperboloid}) {
    const auto p = hyp3::convert(hyp3::HPoint::hyperboloid(random::point_h(rng, 2.0)), m);
    const auto q = io::point_from_json(reparse(io::to_json(p)));
    EXPECT_EQ(q.model(), m);
    EXPECT_EQ(q.coords(), p.coords());
  }
  EXPECT_THROW(io::point_from_json(io::Json::parse(R"({"model": "disk", "coords": [0, 0, 0]})")), IoError);
  EXPECT_THROW(io::point_from_json(io::Json::parse(R"({"model": "ball", "coords": [0, 0]})")), IoError);
  EXPECT_THROW(io::point_from_json(io::Json::parse(R"({"model": "ball"})")), IoError);
}

TEST(Io, BoundaryPoints) {
  const auto inf = io::boundary_from_json(io::Json("inf"));
  EXPECT_TRUE(inf.chart().infinite);
  const auto w = io::boundary_from_json(io::Json::parse("[0.5, -2.0]"));
  EXPECT_NEAR(std::abs(w.chart().w - Complex(0.5, -2.0)), 0.0, 1e-14);
  const auto u = io::boundary_from_json(io::Json::parse("[0, 3, 4]"));
  EXPECT_NEAR(u.unit().y(), 0.6, 1e-15);
}

TEST(Io, WordsPolygonsAndConfigurations) {
  random::Rng rng(123);
  const auto p = random::closed_polygon(rng, 5);
  const auto q = io::hpolygon_from_json(reparse(io::to_json(p)));
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_EQ(q.word()[i].a(), p.word()[i].a());
    EXPECT_EQ(q.word()[i].z(), p.word()[i].z());
  }
  const auto e = random::closed_epolygon(rng, 6);
  EXPECT_EQ(io::epolygon_from_json(reparse(io::to_json(e))).edges, e.edges);

  const auto c = random::stable_configuration(rng, 5);
  const auto d = io::configuration_from_json(reparse(io::to_json(c)));
  ASSERT_EQ(d.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_LT((d.points[i].unit() - c.points[i].unit()).norm(), 1e-15);
    EXPECT_EQ(d.weights[i], c.weights[i]);
  }

  const bending::ActionAngle aa{{1.0, 2.5}, {0.1, 6.0}};
  const auto bb = io::action_angle_from_json(reparse(io::to_json(aa)));
  EXPECT_EQ(bb.lengths, aa.lengths);
  EXPECT_EQ(bb.angles, aa.angles);
  EXPECT_THROW(io::weights_from_json(io::Json::parse("[1, -1, 2]")), DomainError);
  EXPECT_THROW(io::weights_from_json(io::Json::parse(R"(["a"])")), IoError);
}

TEST(Io, DocumentChecks) {
  auto doc = io::document("center");
  EXPECT_EQ(doc["schema"], io::kSchema);
  EXPECT_NO_THROW(io::check_document(doc, "center"));
  EXPECT_THROW(io::check_document(doc, "close"), IoError);
  doc["schema"] = "hypergon/0";
  EXPECT_THROW(io::check_document(doc, ""), IoError);
  std::istringstream bad("{\"a\": ");
  EXPECT_THROW(io::parse_json(bad), IoError);
  EXPECT_THROW(io::read_json("/nonexistent/file.json"), IoError);
}
