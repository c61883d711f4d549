#include "hypergon/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hypergon::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(std::string("bad ") + what + ": " + e.what());
  }
}

Json vec(const auto& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec3 vec3(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw IoError("expected a 3-vector");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

}  // namespace

Json parse_json(std::istream& in) {
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json(const std::string& path) {
  if (path == "-") return parse_json(std::cin);
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path + "'");
  return parse_json(f);
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

void write_json(const std::string& path, const Json& doc) {
  if (path == "-") {
    std::cout << dump(doc);
    return;
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot write '" + path + "'");
  f << dump(doc);
  if (!f) throw IoError("write failed for '" + path + "'");
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json document(const std::string& type) {
  Json j;
  j["schema"] = kSchema;
  j["type"] = type;
  return j;
}

void check_document(const Json& doc, const std::string& type) {
  if (!doc.is_object()) throw IoError("document must be a JSON object");
  if (doc.contains("schema") && doc["schema"] != kSchema)
    throw IoError("unsupported schema " + doc["schema"].dump());
  if (!type.empty() && doc.contains("type") && doc["type"] != type)
    throw IoError("expected a " + type + " document, got " + doc["type"].dump());
}

// ----------------------------------------------------------------- points

Json to_json(const hyp3::HPoint& p) {
  Json j;
  j["model"] = hyp3::model_name(p.model());
  j["coords"] = p.coords();
  return j;
}

hyp3::HPoint point_from_json(const Json& j) {
  return guarded("point", [&] {
    const auto model = hyp3::model_from_name(j.at("model").get<std::string>());
    const auto c = j.at("coords").get<std::vector<double>>();
    switch (model) {
      case hyp3::Model::HalfSpace:
        if (c.size() != 3) throw IoError("half_space point needs 3 coordinates");
        return hyp3::HPoint::half_space(c[0], c[1], c[2]);
      case hyp3::Model::Ball:
        if (c.size() != 3) throw IoError("ball point needs 3 coordinates");
        return hyp3::HPoint::ball(Vec3(c[0], c[1], c[2]));
      case hyp3::Model::Hyperboloid:
        if (c.size() != 4) throw IoError("hyperboloid point needs 4 coordinates");
        return hyp3::HPoint::hyperboloid(Vec4(c[0], c[1], c[2], c[3]));
    }
    throw IoError("unknown model");
  });
}

Json to_json(const hyp3::BoundaryPoint& p) {
  Json j;
  j["unit"] = vec(p.unit());
  return j;
}

hyp3::BoundaryPoint boundary_from_json(const Json& j) {
  return guarded("boundary point", [&] {
    // A unit vector, a chart value [re, im], or "inf".
    if (j.is_string()) {
      if (j.get<std::string>() != "inf") throw IoError("boundary point: unknown string");
      return hyp3::BoundaryPoint::infinity();
    }
    if (j.is_array() && j.size() == 2) return hyp3::BoundaryPoint::from_complex({j[0].get<double>(), j[1].get<double>()});
    if (j.is_array()) return hyp3::BoundaryPoint(vec3(j));
    return hyp3::BoundaryPoint(vec3(j.at("unit")));
  });
}

Json to_json(const borel::BElem& b) {
  Json j;
  j["a"] = b.a();
  j["z_re"] = b.z().real();
  j["z_im"] = b.z().imag();
  return j;
}

borel::BElem belem_from_json(const Json& j) {
  return guarded("B element", [&] {
    return borel::BElem(j.at("a").get<double>(), Complex(j.at("z_re").get<double>(), j.at("z_im").get<double>()));
  });
}

Json to_json(const borel::SU2Elem& k) {
  const auto q = k.quaternion();
  return Json::array({q[0], q[1], q[2], q[3]});
}

borel::SU2Elem su2_from_json(const Json& j) {
  return guarded("SU(2) element", [&] {
    const auto q = j.get<std::vector<double>>();
    if (q.size() != 4) throw IoError("SU(2) element needs 4 quaternion components");
    return borel::SU2Elem::from_quaternion(q[0], q[1], q[2], q[3]);
  });
}

Json to_json(const moduli::Weights& r) {
  Json j;
  j["r"] = r.values();
  return j;
}

moduli::Weights weights_from_json(const Json& j) {
  return guarded("weights", [&] {
    const Json& r = j.is_array() ? j : j.at("r");
    return moduli::Weights(r.get<std::vector<double>>());
  });
}

// --------------------------------------------------------------- polygons

Json to_json(const moduli::HPolygon& p, hyp3::Model model) {
  Json j;
  Json w = Json::array();
  for (const auto& b : p.word()) w.push_back(to_json(b));
  j["word"] = w;
  Json v = Json::array();
  for (const auto& x : p.vertices_h()) v.push_back(to_json(hyp3::HPoint::in_model(x, model)));
  j["vertices"] = v;
  j["side_lengths"] = p.side_lengths();
  return j;
}

moduli::HPolygon hpolygon_from_json(const Json& j) {
  return guarded("hyperbolic polygon", [&] {
    borel::Word w;
    for (const auto& b : j.at("word")) w.push_back(belem_from_json(b));
    if (w.empty()) throw IoError("empty word");
    return moduli::HPolygon(std::move(w));
  });
}

Json to_json(const moduli::EPolygon& p) {
  Json j;
  Json e = Json::array();
  for (const auto& x : p.edges) e.push_back(vec(x));
  j["edges"] = e;
  j["side_lengths"] = p.side_lengths();
  return j;
}

moduli::EPolygon epolygon_from_json(const Json& j) {
  return guarded("Euclidean polygon", [&] {
    moduli::EPolygon p;
    for (const auto& e : j.at("edges")) p.edges.push_back(vec3(e));
    if (p.edges.empty()) throw IoError("empty polygon");
    return p;
  });
}

Json to_json(const gaussmap::Configuration& c) {
  Json j;
  Json pts = Json::array(), charts = Json::array();
  for (const auto& p : c.points) {
    pts.push_back(vec(p.unit()));
    const auto ch = p.chart();
    if (ch.infinite)
      charts.push_back("inf");
    else
      charts.push_back(Json::array({ch.w.real(), ch.w.imag()}));
  }
  j["points"] = pts;
  j["charts"] = charts;
  j["weights"] = c.weights.values();
  return j;
}

gaussmap::Configuration configuration_from_json(const Json& j) {
  return guarded("configuration", [&] {
    std::vector<hyp3::BoundaryPoint> pts;
    for (const auto& p : j.at("points")) pts.push_back(boundary_from_json(p));
    if (pts.size() != j.at("weights").size()) throw IoError("configuration: points and weights differ in length");
    return gaussmap::make_configuration(std::move(pts), weights_from_json(j.at("weights")));
  });
}

Json to_json(const bending::ActionAngle& aa) {
  Json j;
  j["l"] = aa.lengths;
  j["theta"] = aa.angles;
  return j;
}

bending::ActionAngle action_angle_from_json(const Json& j) {
  return guarded("action-angle", [&] {
    return bending::ActionAngle{j.at("l").get<std::vector<double>>(), j.at("theta").get<std::vector<double>>()};
  });
}

Json to_json(const gaussmap::SolverReport& r) {
  Json j;
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  j["contraction_factor"] = r.contraction_factor;
  j["confined"] = r.confined;
  return j;
}

}  // namespace hypergon::io
