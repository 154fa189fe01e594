// Witness files: everything needed to replay a failing trial bit-exactly.
// Floats are written as C99 hex literals so no digits are lost.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "json.hpp"
#include "sectorlab/verifier.hpp"

namespace sectorlab {

using nlohmann::json;

std::string hex_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", x);
  return buf;
}

double parse_double(const std::string& s) {
  if (s.empty()) throw Error(ErrorKind::Parse, "empty number");
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(s.c_str(), &end);
  if (*end != '\0') throw Error(ErrorKind::Parse, "bad number '" + s + "'");
  return x;
}

namespace {

json matrix_to_json(const CMatrixd& a) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back({hex_double(a(i, j).real()), hex_double(a(i, j).imag())});
    rows.push_back(row);
  }
  return rows;
}

CMatrixd matrix_from_json(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
  CMatrixd a(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j.at(r).size()) != cols) throw Error(ErrorKind::Parse, "witness: ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& z = j.at(r).at(c);
      a(r, c) = {parse_double(z.at(0).get<std::string>()), parse_double(z.at(1).get<std::string>())};
    }
  }
  return a;
}

const char* kind_name(PULMap::Kind k) {
  switch (k) {
    case PULMap::Kind::Identity: return "identity";
    case PULMap::Kind::NormalizedTrace: return "trace";
    case PULMap::Kind::Pinching: return "pinch";
    case PULMap::Kind::UnitaryConj: return "unitary";
    case PULMap::Kind::Compression: return "compress";
    case PULMap::Kind::SchurHadamard: return "schur";
    case PULMap::Kind::Convex: return "convex";
  }
  return "?";
}

json map_to_json(const PULMap& phi) {
  json j;
  j["kind"] = kind_name(phi.kind());
  j["in"] = phi.in_dim();
  j["out"] = phi.out_dim();
  switch (phi.kind()) {
    case PULMap::Kind::Pinching: j["blocks"] = phi.blocks(); break;
    case PULMap::Kind::UnitaryConj:
    case PULMap::Kind::Compression:
    case PULMap::Kind::SchurHadamard: j["param"] = matrix_to_json(phi.param()); break;
    case PULMap::Kind::Convex: {
      json terms = json::array();
      for (const auto& [w, t] : phi.terms()) terms.push_back({{"weight", hex_double(w)}, {"map", map_to_json(t)}});
      j["terms"] = terms;
      break;
    }
    default: break;
  }
  return j;
}

PULMap map_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int in = j.at("in").get<int>();
  const int out = j.at("out").get<int>();
  if (kind == "identity") return PULMap::identity(in);
  if (kind == "trace") return PULMap::normalized_trace(in, out);
  if (kind == "pinch") return PULMap::pinching(j.at("blocks").get<std::vector<int>>());
  if (kind == "unitary") return PULMap::unitary_conj(matrix_from_json(j.at("param")));
  if (kind == "compress") return PULMap::compression(matrix_from_json(j.at("param")));
  if (kind == "schur") return PULMap::schur_hadamard(matrix_from_json(j.at("param")));
  if (kind == "convex") {
    std::vector<std::pair<double, PULMap>> terms;
    for (const auto& t : j.at("terms")) {
      terms.emplace_back(parse_double(t.at("weight").get<std::string>()), map_from_json(t.at("map")));
    }
    return PULMap::convex(std::move(terms));
  }
  throw Error(ErrorKind::Parse, "witness: unknown map kind '" + kind + "'");
}

MeanSpec mean_from_id(const std::string& id) { return MeanSpec(OpMonotone::parse(id)); }

}  // namespace

std::string write_witness(const TrialBundle& b, const CheckResult& result) {
  json j;
  j["format"] = "sectorlab.witness/1";
  j["check"] = b.check;
  j["seed"] = b.seed;
  j["n"] = b.n;
  j["theta"] = hex_double(b.theta);
  j["m"] = hex_double(b.m);
  j["M"] = hex_double(b.M);
  j["p"] = hex_double(b.p);
  j["v"] = hex_double(b.v);
  j["sigma1"] = b.sigma1.f.id(true);
  j["sigma2"] = b.sigma2.f.id(true);
  j["sigma_free"] = b.sigma_free.f.id(true);
  j["sigma_below_arith"] = b.sigma_below_arith.f.id(true);
  j["f"] = b.f.id(true);
  j["phi"] = map_to_json(b.phi);
  j["A"] = matrix_to_json(b.A);
  j["B"] = matrix_to_json(b.B);
  j["A_inv_bounded"] = matrix_to_json(b.A_inv_bounded);
  j["B_inv_bounded"] = matrix_to_json(b.B_inv_bounded);
  json res;
  res["pass"] = result.pass;
  res["precision"] = result.precision;
  res["error"] = result.error;
  res["slack"] = hex_double(result.slack);
  json clauses = json::array();
  for (const auto& c : result.clauses) {
    clauses.push_back({{"name", c.name},
                       {"constant", hex_double(c.constant)},
                       {"slack", hex_double(c.slack)},
                       {"threshold", hex_double(c.threshold)},
                       {"ratio", hex_double(c.ratio)},
                       {"pass", c.pass}});
  }
  res["clauses"] = clauses;
  j["result"] = res;
  return j.dump(2) + "\n";
}

TrialBundle read_witness(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("witness: ") + e.what());
  }
  try {
    TrialBundle b;
    b.check = j.at("check").get<std::string>();
    b.seed = j.at("seed").get<std::uint64_t>();
    b.n = j.at("n").get<int>();
    b.theta = parse_double(j.at("theta").get<std::string>());
    b.m = parse_double(j.at("m").get<std::string>());
    b.M = parse_double(j.at("M").get<std::string>());
    b.p = parse_double(j.at("p").get<std::string>());
    b.v = parse_double(j.at("v").get<std::string>());
    b.sigma1 = mean_from_id(j.at("sigma1").get<std::string>());
    b.sigma2 = mean_from_id(j.at("sigma2").get<std::string>());
    b.sigma_free = mean_from_id(j.at("sigma_free").get<std::string>());
    b.sigma_below_arith = mean_from_id(j.at("sigma_below_arith").get<std::string>());
    b.f = OpMonotone::parse(j.at("f").get<std::string>());
    b.phi = map_from_json(j.at("phi"));
    b.A = matrix_from_json(j.at("A"));
    b.B = matrix_from_json(j.at("B"));
    b.A_inv_bounded = matrix_from_json(j.at("A_inv_bounded"));
    b.B_inv_bounded = matrix_from_json(j.at("B_inv_bounded"));
    return b;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("witness: ") + e.what());
  }
}

}  // namespace sectorlab
