#pragma once

// JSON wire formats: classes as {"x":..,"y":..} / {"x":..,"e":..,"y":..},
// matrices as {"matrix":[[..]x3]} row-major, words as {"letters":[..]};
// big integers that do not fit a 64-bit JSON number are emitted as decimal
// strings, and both forms are accepted on input.

#include <json.hpp>

#include <cstdint>
#include <string>

#include "hilbsq/hyperbolic.hpp"
#include "hilbsq/isometry.hpp"
#include "hilbsq/lattice.hpp"
#include "hilbsq/quad.hpp"
#include "hilbsq/words.hpp"

namespace hilbsq {

using nlohmann::json;

inline json bigint_to_json(const BigInt& n) {
  static const BigInt lo = std::numeric_limits<std::int64_t>::min();
  static const BigInt hi = std::numeric_limits<std::int64_t>::max();
  if (n >= lo && n <= hi) return n.template convert_to<std::int64_t>();
  return n.str();
}

inline BigInt bigint_from_json(const json& j, const char* what) {
  if (j.is_number_integer()) return BigInt(j.template get<std::int64_t>());
  if (j.is_string()) return BigInt(j.template get<std::string>());
  throw std::invalid_argument(std::string(what) + ": expected an integer");
}

inline json rational_to_json(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return bigint_to_json(num);
  return num.str() + "/" + den.str();
}

inline json to_json(const SurfaceClass& c) {
  return json{{"x", bigint_to_json(c.x)}, {"y", bigint_to_json(c.y)}};
}

inline SurfaceClass surface_from_json(const json& j) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y"))
    throw std::invalid_argument("surface class: expected {\"x\":..,\"y\":..}");
  return SurfaceClass(bigint_from_json(j.at("x"), "x"), bigint_from_json(j.at("y"), "y"));
}

inline json to_json(const HilbClass& c) {
  return json{{"x", bigint_to_json(c.x)},
              {"e", bigint_to_json(c.lam)},
              {"y", bigint_to_json(c.y)}};
}

inline HilbClass hilb_from_json(const json& j) {
  if (!j.is_object() || !j.contains("x") || !j.contains("e") || !j.contains("y"))
    throw std::invalid_argument("divisor class: expected {\"x\":..,\"e\":..,\"y\":..}");
  return HilbClass(bigint_from_json(j.at("x"), "x"), bigint_from_json(j.at("e"), "e"),
                   bigint_from_json(j.at("y"), "y"));
}

inline json to_json(const Mat3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int j = 0; j < 3; ++j) row.push_back(bigint_to_json(m.at(i, j)));
    rows.push_back(row);
  }
  return json{{"matrix", rows}};
}

inline Mat3 mat3_from_json(const json& j) {
  const json& rows = j.is_object() && j.contains("matrix") ? j.at("matrix") : j;
  if (!rows.is_array() || rows.size() != 3)
    throw std::invalid_argument("matrix: expected 3 rows");
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    if (!rows[i].is_array() || rows[i].size() != 3)
      throw std::invalid_argument("matrix: expected 3 columns per row");
    for (int c = 0; c < 3; ++c) m.at(i, c) = bigint_from_json(rows[i][c], "matrix entry");
  }
  return m;
}

inline json to_json(const ReducedWord& w) {
  return json{{"letters", w.letters()}};
}

inline ReducedWord word_from_json(const json& j) {
  if (!j.is_object() || !j.contains("letters") || !j.at("letters").is_array())
    throw std::invalid_argument("word: expected {\"letters\":[..]}");
  std::vector<int> letters;
  for (const auto& l : j.at("letters")) {
    if (!l.is_number_integer()) throw std::invalid_argument("word: letters must be integers");
    letters.push_back(l.template get<int>());
  }
  return reduce(letters);
}

inline json to_json(const QuadExt& q) {
  return json{{"a", rational_to_json(q.a())},
              {"b", rational_to_json(q.b())},
              {"d", q.d()},
              {"approx", q.to_double()}};
}

inline json to_json(const IsometryClass& cls) {
  json out;
  switch (cls.kind) {
    case IsometryKind::Identity: out["kind"] = "identity"; break;
    case IsometryKind::Elliptic: out["kind"] = "elliptic"; break;
    case IsometryKind::Parabolic: out["kind"] = "parabolic"; break;
    case IsometryKind::Hyperbolic: out["kind"] = "hyperbolic"; break;
  }
  out["so_trace"] = bigint_to_json(cls.so_trace);
  if (cls.elliptic_order) out["order"] = *cls.elliptic_order;
  if (cls.kind == IsometryKind::Hyperbolic) {
    if (cls.spectral_radius_is_exact) out["spectral_radius"] = to_json(*cls.spectral_radius);
    else out["spectral_radius"] = json{{"approx", cls.spectral_radius_approx}};
  }
  return out;
}

inline json to_json(const AmpleDecision& d) {
  json out;
  switch (d.status) {
    case AmpleStatus::Ample:
      out["ample"] = true;
      break;
    case AmpleStatus::NotAmple:
      out["ample"] = false;
      break;
    case AmpleStatus::Inconclusive:
      out["ample"] = nullptr;
      out["inconclusive"] = true;
      break;
  }
  if (d.witness) out["witness"] = to_json(*d.witness);
  if (d.status == AmpleStatus::NotAmple) out["nef_boundary"] = d.nef_boundary;
  out["completeness_bound"] = bigint_to_json(d.completeness_bound);
  out["reason"] = d.reason;
  return out;
}

inline json to_json(const Decomposition& d) {
  json out;
  switch (d.status) {
    case DecomposeStatus::Ok: out["status"] = "ok"; break;
    case DecomposeStatus::NotInGroup: out["status"] = "not_in_group"; break;
    case DecomposeStatus::BoundExceeded: out["status"] = "bound_exceeded"; break;
  }
  if (d.status == DecomposeStatus::Ok) {
    out["letters"] = d.word.letters();
    out["natural_tail"] = d.natural_tail;
  } else {
    out["reason"] = d.reason;
  }
  json trace = json::array();
  for (const auto& s : d.steps)
    trace.push_back(json{{"lambda", bigint_to_json(s.lambda)}, {"k", s.k}, {"l", s.l}});
  out["trace"] = trace;
  return out;
}

inline json to_json(const TriangleData& t) {
  json out;
  out["cosh_sides"] = t.cosh_sides;
  out["angles"] = t.angles;
  out["lambda"] = t.lambda;
  if (t.lambda_exact) out["lambda_exact"] = to_json(*t.lambda_exact);
  return out;
}

inline json to_json(const FuchsianSignature& s) {
  return json{{"genus", s.genus},
              {"elliptic_orders", s.elliptic_orders},
              {"parabolic_classes", s.s},
              {"boundary_classes", s.t},
              {"symbol", s.str()}};
}

}  // namespace hilbsq
