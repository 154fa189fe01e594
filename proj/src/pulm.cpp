#include "sectorlab/pulm.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>

namespace sectorlab {

PULMap PULMap::identity(int n) {
  PULMap p;
  p.kind_ = Kind::Identity;
  p.in_ = p.out_ = n;
  return p;
}

PULMap PULMap::normalized_trace(int n, int k) {
  if (n < 1 || k < 1) throw Error(ErrorKind::Domain, "normalized_trace: dimensions must be positive");
  PULMap p;
  p.kind_ = Kind::NormalizedTrace;
  p.in_ = n;
  p.out_ = k;
  return p;
}

PULMap PULMap::pinching(std::vector<int> blocks) {
  int n = 0;
  for (int b : blocks) {
    if (b < 1) throw Error(ErrorKind::Domain, "pinching: block sizes must be positive");
    n += b;
  }
  if (n < 1) throw Error(ErrorKind::Domain, "pinching: empty partition");
  PULMap p;
  p.kind_ = Kind::Pinching;
  p.in_ = p.out_ = n;
  p.blocks_ = std::move(blocks);
  return p;
}

PULMap PULMap::unitary_conj(const CMatrixd& u) {
  if (u.rows() != u.cols() || u.rows() < 1) throw Error(ErrorKind::Domain, "unitary_conj: U must be square");
  const double err = (u.adjoint() * u - CMatrixd::Identity(u.rows(), u.cols())).norm();
  if (err > 1e-10) throw Error(ErrorKind::Domain, "unitary_conj: U is not unitary");
  PULMap p;
  p.kind_ = Kind::UnitaryConj;
  p.in_ = p.out_ = static_cast<int>(u.rows());
  p.param_ = u;
  return p;
}

PULMap PULMap::compression(const CMatrixd& v) {
  if (v.cols() < 1 || v.cols() > v.rows()) throw Error(ErrorKind::Domain, "compression: V must be n x k with k <= n");
  const double err = (v.adjoint() * v - CMatrixd::Identity(v.cols(), v.cols())).norm();
  if (err > 1e-10) throw Error(ErrorKind::Domain, "compression: V is not an isometry");
  PULMap p;
  p.kind_ = Kind::Compression;
  p.in_ = static_cast<int>(v.rows());
  p.out_ = static_cast<int>(v.cols());
  p.param_ = v;
  return p;
}

PULMap PULMap::schur_hadamard(const CMatrixd& c) {
  if (c.rows() != c.cols() || c.rows() < 1) throw Error(ErrorKind::Domain, "schur_hadamard: C must be square");
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    if (c(i, i) != std::complex<double>(1)) throw Error(ErrorKind::Domain, "schur_hadamard: C needs unit diagonal");
  }
  if (lambda_min(HermMatrixd(c)) < -1e-10) throw Error(ErrorKind::Domain, "schur_hadamard: C is not PSD");
  PULMap p;
  p.kind_ = Kind::SchurHadamard;
  p.in_ = p.out_ = static_cast<int>(c.rows());
  p.param_ = HermMatrixd(c).matrix();
  return p;
}

PULMap PULMap::convex(std::vector<std::pair<double, PULMap>> terms) {
  if (terms.empty()) throw Error(ErrorKind::Domain, "convex: no terms");
  double total = 0;
  for (const auto& [w, phi] : terms) {
    if (!(w >= 0)) throw Error(ErrorKind::Domain, "convex: negative weight");
    if (phi.in_dim() != terms.front().second.in_dim() || phi.out_dim() != terms.front().second.out_dim()) {
      throw Error(ErrorKind::DimensionMismatch, "convex: terms disagree on dimensions");
    }
    total += w;
  }
  if (std::abs(total - 1) > 1e-12) throw Error(ErrorKind::Domain, "convex: weights must sum to 1");
  PULMap p;
  p.kind_ = Kind::Convex;
  p.in_ = terms.front().second.in_dim();
  p.out_ = terms.front().second.out_dim();
  p.terms_ = std::move(terms);
  return p;
}

namespace {

std::vector<int> random_partition(int n, Rng& rng) {
  std::vector<int> blocks;
  int left = n;
  while (left > 0) {
    const int b = 1 + static_cast<int>(uniform01(rng) * left);
    blocks.push_back(std::min(b, left));
    left -= blocks.back();
  }
  return blocks;
}

CMatrixd random_correlation(int n, Rng& rng) {
  const CMatrixd g = complex_gaussian(n, n, rng);
  CMatrixd c = g * g.adjoint();
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = 1.0 / std::sqrt(c(i, i).real());
  c = d.asDiagonal() * c * d.asDiagonal();
  c = HermMatrixd(c).matrix();
  for (int i = 0; i < n; ++i) c(i, i) = 1.0;
  return c;
}

PULMap random_square(int n, Rng& rng, bool allow_convex) {
  const int kinds = allow_convex ? 6 : 5;
  switch (static_cast<int>(uniform01(rng) * kinds)) {
    case 0: return PULMap::identity(n);
    case 1: return PULMap::normalized_trace(n, n);
    case 2: return PULMap::pinching(random_partition(n, rng));
    case 3: return PULMap::unitary_conj(haar_unitary(n, rng));
    case 4: return PULMap::schur_hadamard(random_correlation(n, rng));
    default: {
      const int count = 2 + static_cast<int>(uniform01(rng) * 2);
      std::vector<double> w(count);
      for (auto& x : w) x = 0.05 + uniform01(rng);
      const double total = std::accumulate(w.begin(), w.end(), 0.0);
      std::vector<std::pair<double, PULMap>> terms;
      double used = 0;
      for (int i = 0; i < count; ++i) {
        const double wi = i + 1 < count ? w[i] / total : 1.0 - used;
        used += wi;
        terms.emplace_back(wi, random_square(n, rng, false));
      }
      return PULMap::convex(std::move(terms));
    }
  }
}

int parse_int(const std::string& s, const std::string& id) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') throw Error(ErrorKind::Parse, "map id '" + id + "': bad integer '" + s + "'");
  return static_cast<int>(v);
}

}  // namespace

PULMap PULMap::random(int n, Rng& rng) {
  // Compression is drawn separately since it changes the output dimension.
  if (n > 1 && uniform01(rng) < 1.0 / 7.0) {
    const int k = 1 + static_cast<int>(uniform01(rng) * n);
    return compression(random_isometry(n, std::min(k, n), rng));
  }
  return random_square(n, rng, true);
}

PULMap PULMap::parse(const std::string& id, int n, Rng& rng) {
  const auto colon = id.find(':');
  const std::string name = id.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : id.substr(colon + 1);
  auto value_of = [&](const std::string& key) -> std::string {
    if (arg.rfind(key + "=", 0) != 0) throw Error(ErrorKind::Parse, "map id '" + id + "': expected " + key + "=...");
    return arg.substr(key.size() + 1);
  };
  if (name == "identity") return identity(n);
  if (name == "trace") return normalized_trace(n, arg.empty() ? n : parse_int(value_of("k"), id));
  if (name == "pinch") {
    std::vector<int> blocks;
    std::stringstream ss(value_of("blocks"));
    std::string part;
    while (std::getline(ss, part, '+')) blocks.push_back(parse_int(part, id));
    PULMap p = pinching(blocks);
    if (p.in_dim() != n) throw Error(ErrorKind::DimensionMismatch, "map id '" + id + "': blocks do not sum to n");
    return p;
  }
  if (name == "compress") {
    const int k = parse_int(value_of("k"), id);
    if (k < 1 || k > n) throw Error(ErrorKind::Domain, "map id '" + id + "': need 1 <= k <= n");
    return compression(CMatrixd::Identity(n, n).leftCols(k));
  }
  if (name == "unitary") return unitary_conj(haar_unitary(n, rng));
  if (name == "schur") {
    if (arg == "ones") return schur_hadamard(CMatrixd::Ones(n, n));
    return schur_hadamard(random_correlation(n, rng));
  }
  if (name == "random") return random(n, rng);
  throw Error(ErrorKind::Parse, "unknown map id '" + id + "'");
}

std::string PULMap::id() const {
  switch (kind_) {
    case Kind::Identity: return "identity";
    case Kind::NormalizedTrace: return "trace:k=" + std::to_string(out_);
    case Kind::Pinching: {
      std::string s = "pinch:blocks=";
      for (std::size_t i = 0; i < blocks_.size(); ++i) s += (i ? "+" : "") + std::to_string(blocks_[i]);
      return s;
    }
    case Kind::UnitaryConj: return "unitary";
    case Kind::Compression: return "compress:k=" + std::to_string(out_);
    case Kind::SchurHadamard: return "schur";
    case Kind::Convex: {
      std::string s = "convex(";
      for (std::size_t i = 0; i < terms_.size(); ++i) s += (i ? "," : "") + terms_[i].second.id();
      return s + ")";
    }
  }
  return "?";
}

CMatrixd PULMap::choi() const {
  const int n = in_, k = out_;
  CMatrixd c = CMatrixd::Zero(n * k, n * k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CMatrixd e = CMatrixd::Zero(n, n);
      e(i, j) = 1;
      c.block(i * k, j * k, k, k) = apply<double>(e);
    }
  }
  return c;
}

ChoiVerdict choi_check(const PULMap& phi) {
  const double lmin = lambda_min(HermMatrixd(phi.choi()));
  if (lmin < -1e-10) {
    std::ostringstream msg;
    msg << phi.id() << ": Choi matrix has eigenvalue " << lmin;
    throw Error(ErrorKind::ChoiNotPSD, msg.str());
  }
  return {lmin};
}

}  // namespace sectorlab
