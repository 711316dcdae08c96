#include "llab/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace llab {

namespace {

constexpr double kStructureTol = 1e-10;

void check_in_dim(const PositiveLinearMap& m, const HermitianMatrix& a) {
  if (a.dim() != m.in_dim())
    throw DimensionError(std::string(m.kind_name()) + ": input dim " +
                         std::to_string(a.dim()) + ", map expects " +
                         std::to_string(m.in_dim()));
}

}  // namespace

PositiveLinearMap::PositiveLinearMap(Kind kind, int in_dim, int out_dim)
    : kind_(kind), in_dim_(in_dim), out_dim_(out_dim) {}

const char* PositiveLinearMap::kind_name() const {
  switch (kind_) {
    case Kind::Compression: return "compression";
    case Kind::Kraus: return "kraus";
    case Kind::DirectSumAverage: return "dsavg";
    case Kind::Pinching: return "pinching";
  }
  return "?";
}

PositiveLinearMap PositiveLinearMap::compression(int in_dim,
                                                 std::vector<int> indices) {
  if (in_dim < 1) throw ConfigError("compression: in_dim must be >= 1");
  if (indices.empty()) throw ConfigError("compression: no indices");
  for (size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 1 || indices[i] > in_dim)
      throw ConfigError("compression: index " + std::to_string(indices[i]) +
                        " outside 1.." + std::to_string(in_dim));
    if (i > 0 && indices[i] <= indices[i - 1])
      throw ConfigError("compression: indices must be strictly increasing");
  }
  PositiveLinearMap m(Kind::Compression, in_dim,
                      static_cast<int>(indices.size()));
  m.indices_ = std::move(indices);
  m.unital_ = true;
  m.spot_check_positivity();
  return m;
}

PositiveLinearMap PositiveLinearMap::kraus(std::vector<Cmat> factors) {
  if (factors.empty()) throw ConfigError("kraus: no factors");
  const int in = factors.front().rows();
  const int out = factors.front().cols();
  if (in < 1 || out < 1) throw ConfigError("kraus: empty factor");
  for (const Cmat& c : factors)
    if (c.rows() != in || c.cols() != out)
      throw DimensionError("kraus: factors must share one shape");
  Cmat sum(out, out);
  for (const Cmat& c : factors) sum = sum + adjoint(c) * c;
  PositiveLinearMap m(Kind::Kraus, in, out);
  m.unital_ = max_abs(sum - Cmat::identity(out)) <= kStructureTol;
  m.factors_ = std::move(factors);
  m.spot_check_positivity();
  return m;
}

PositiveLinearMap PositiveLinearMap::direct_sum_average(
    std::vector<int> block_dims, std::vector<double> weights) {
  if (block_dims.empty()) throw ConfigError("dsavg: no blocks");
  if (block_dims.size() != weights.size())
    throw ConfigError("dsavg: " + std::to_string(block_dims.size()) +
                      " blocks vs " + std::to_string(weights.size()) +
                      " weights");
  const int bd = block_dims.front();
  if (bd < 1) throw ConfigError("dsavg: block dim must be >= 1");
  for (int d : block_dims)
    if (d != bd)
      throw ConfigError("dsavg: blocks must have equal dims to be summed");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw ConfigError("dsavg: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ConfigError("dsavg: weights sum to " + std::to_string(total) +
                      ", expected 1");
  PositiveLinearMap m(Kind::DirectSumAverage,
                      bd * static_cast<int>(block_dims.size()), bd);
  m.block_dims_ = std::move(block_dims);
  m.weights_ = std::move(weights);
  m.unital_ = true;
  m.spot_check_positivity();
  return m;
}

PositiveLinearMap PositiveLinearMap::pinching(std::vector<Cmat> projections) {
  if (projections.empty()) throw ConfigError("pinching: no projections");
  const int n = projections.front().rows();
  Cmat sum(n, n);
  for (const Cmat& p : projections) {
    if (!p.square() || p.rows() != n)
      throw DimensionError("pinching: projections must be n x n");
    if (hermitian_defect(p) > kStructureTol)
      throw ConfigError("pinching: projection not Hermitian");
    if (max_abs(p * p - p) > kStructureTol)
      throw ConfigError("pinching: projection not idempotent");
    sum = sum + p;
  }
  for (size_t i = 0; i < projections.size(); ++i)
    for (size_t j = i + 1; j < projections.size(); ++j)
      if (max_abs(projections[i] * projections[j]) > kStructureTol)
        throw ConfigError("pinching: projections not pairwise orthogonal");
  if (max_abs(sum - Cmat::identity(n)) > kStructureTol)
    throw ConfigError("pinching: projections do not sum to the identity");
  PositiveLinearMap m(Kind::Pinching, n, n);
  m.projections_ = std::move(projections);
  m.unital_ = true;
  m.spot_check_positivity();
  return m;
}

PositiveLinearMap PositiveLinearMap::identity_map(int dim) {
  std::vector<Cmat> f;
  f.push_back(Cmat::identity(dim));
  return kraus(std::move(f));
}

void PositiveLinearMap::spot_check_positivity() const {
  Rng rng(derive_seed(0x10e57, "map-positivity-spot-check",
                      static_cast<std::uint64_t>(in_dim_),
                      static_cast<std::uint64_t>(out_dim_)));
  for (int k = 0; k < 16; ++k) {
    const HermitianMatrix out = (*this)(random_psd(in_dim_, rng));
    const double lo = min_eigenvalue(out);
    if (lo < -1e-10)
      throw NotPositiveError(std::string(kind_name()) +
                             ": positivity spot check failed, output min "
                             "eigenvalue " +
                             std::to_string(lo));
  }
}

HermitianMatrix PositiveLinearMap::operator()(const HermitianMatrix& a) const {
  check_in_dim(*this, a);
  switch (kind_) {
    case Kind::Compression: {
      Cmat out(out_dim_, out_dim_);
      for (int i = 0; i < out_dim_; ++i)
        for (int j = 0; j < out_dim_; ++j)
          out(i, j) = a(indices_[i] - 1, indices_[j] - 1);
      return HermitianMatrix(out);
    }
    case Kind::Kraus: {
      Cmat acc(out_dim_, out_dim_);
      for (const Cmat& c : factors_) acc = acc + adjoint(c) * a.mat() * c;
      return HermitianMatrix(acc);
    }
    case Kind::DirectSumAverage: {
      Cmat acc(out_dim_, out_dim_);
      int offset = 0;
      for (size_t b = 0; b < weights_.size(); ++b) {
        for (int i = 0; i < out_dim_; ++i)
          for (int j = 0; j < out_dim_; ++j)
            acc(i, j) += weights_[b] * a(offset + i, offset + j);
        offset += out_dim_;
      }
      return HermitianMatrix(acc);
    }
    case Kind::Pinching: {
      Cmat acc(out_dim_, out_dim_);
      for (const Cmat& p : projections_) acc = acc + adjoint(p) * a.mat() * p;
      return HermitianMatrix(acc);
    }
  }
  throw Error("apply_map: unknown kind");
}

std::vector<Cmat> PositiveLinearMap::kraus_factors() const {
  switch (kind_) {
    case Kind::Compression: {
      Cmat c(in_dim_, out_dim_);
      for (int j = 0; j < out_dim_; ++j) c(indices_[j] - 1, j) = 1.0;
      return {c};
    }
    case Kind::Kraus:
      return factors_;
    case Kind::DirectSumAverage: {
      std::vector<Cmat> out;
      int offset = 0;
      for (double w : weights_) {
        Cmat e(in_dim_, out_dim_);
        for (int r = 0; r < out_dim_; ++r) e(offset + r, r) = std::sqrt(w);
        out.push_back(std::move(e));
        offset += out_dim_;
      }
      return out;
    }
    case Kind::Pinching:
      return projections_;
  }
  throw Error("kraus_factors: unknown kind");
}

PositiveLinearMap PositiveLinearMap::scaled(double w) const {
  if (!(w > 0.0)) throw ConfigError("scaled: weight must be positive");
  std::vector<Cmat> factors = kraus_factors();
  const cplx root(std::sqrt(w), 0.0);
  for (Cmat& c : factors) c = root * c;
  return kraus(std::move(factors));
}

OperatorField::OperatorField(std::vector<FieldPoint> points)
    : points_(std::move(points)) {
  if (points_.empty()) throw ConfigError("field: empty");
  const int d = points_.front().matrix.dim();
  member_min_eig_ = std::numeric_limits<double>::infinity();
  for (const FieldPoint& p : points_) {
    if (p.matrix.dim() != d)
      throw DimensionError("field: members must share one dim");
    if (!(p.weight > 0.0) || !std::isfinite(p.weight))
      throw ConfigError("field: weights must be positive and finite");
    member_min_eig_ = std::min(member_min_eig_, min_eigenvalue(p.matrix));
  }
}

OperatorField OperatorField::scaled(double c) const {
  if (!(c > 0.0)) throw ConfigError("field scaling must be positive");
  std::vector<FieldPoint> pts;
  pts.reserve(points_.size());
  for (const FieldPoint& p : points_)
    pts.push_back({p.weight, c * p.matrix});
  return OperatorField(std::move(pts));
}

HermitianMatrix integrate_field(const OperatorField& f) {
  HermitianMatrix acc = HermitianMatrix::zero(f.dim());
  for (const FieldPoint& p : f.points()) acc = acc + p.weight * p.matrix;
  return acc;
}

bool same_weights(const OperatorField& a, const OperatorField& b) {
  if (a.length() != b.length()) return false;
  for (int t = 0; t < a.length(); ++t)
    if (a[t].weight != b[t].weight) return false;
  return true;
}

MapField::MapField(std::vector<MapFieldPoint> points)
    : points_(std::move(points)) {
  if (points_.empty()) throw ConfigError("map field: empty");
  const int in = points_.front().map.in_dim();
  const int out = points_.front().map.out_dim();
  Cmat sum(out, out);
  for (const MapFieldPoint& p : points_) {
    if (p.map.in_dim() != in || p.map.out_dim() != out)
      throw DimensionError("map field: members must share in/out dims");
    if (!(p.weight > 0.0) || !std::isfinite(p.weight))
      throw ConfigError("map field: weights must be positive and finite");
    sum = sum + p.weight * p.map(HermitianMatrix::identity(in)).mat();
  }
  unital_ = max_abs(sum - Cmat::identity(out)) <= kStructureTol;
}

DilationPair dilation_pair(const Cmat& c) {
  const int in = c.rows();
  const int out = c.cols();
  if (out > in)
    throw IsometryError("dilation_pair: out_dim exceeds in_dim");
  if (max_abs(adjoint(c) * c - Cmat::identity(out)) > kStructureTol)
    throw IsometryError("dilation_pair: C*C differs from the identity");

  // I - CC* is an orthogonal projection, spectrum {0, 1}; eigenvalue noise
  // must be clamped before the square root (sqrt(1e-16) is already 1e-8).
  const HermitianMatrix gram(Cmat::identity(in) - c * adjoint(c));
  const Cmat d = eig_hermitian(gram)
                     .rebuild([](double x) {
                       return x < kStructureTol ? 0.0 : std::sqrt(x);
                     })
                     .mat();

  const int n = in + out;
  Cmat u(n, n);
  Cmat v(n, n);
  for (int i = 0; i < in; ++i) {
    for (int j = 0; j < out; ++j) {
      u(i, j) = c(i, j);
      v(i, j) = c(i, j);
    }
    for (int j = 0; j < in; ++j) {
      u(i, out + j) = d(i, j);
      v(i, out + j) = -d(i, j);
    }
  }
  for (int i = 0; i < out; ++i)
    for (int j = 0; j < in; ++j) {
      u(in + i, out + j) = -std::conj(c(j, i));
      v(in + i, out + j) = std::conj(c(j, i));
    }
  return {std::move(u), std::move(v)};
}

Cmat random_gaussian(int rows, int cols, Rng& rng) {
  Cmat g(rows, cols);
  const double scale = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      g(i, j) = cplx(rng.normal() * scale, rng.normal() * scale);
  return g;
}

HermitianMatrix random_hermitian(int dim, Rng& rng) {
  const Cmat g = random_gaussian(dim, dim, rng);
  return HermitianMatrix(linear_combination(0.5, g, 0.5, adjoint(g)));
}

HermitianMatrix random_psd(int dim, Rng& rng) {
  const Cmat g = random_gaussian(dim, dim, rng);
  return HermitianMatrix(adjoint(g) * g);
}

HermitianMatrix random_spd(int dim, Rng& rng) {
  const Cmat g = random_gaussian(dim, dim, rng);
  return HermitianMatrix(adjoint(g) * g + cplx(1e-3 * dim, 0.0) *
                                              Cmat::identity(dim));
}

Cmat random_isometry(int in_dim, int out_dim, Rng& rng) {
  if (out_dim > in_dim)
    throw IsometryError("random_isometry: no isometry with out_dim " +
                        std::to_string(out_dim) + " > in_dim " +
                        std::to_string(in_dim));
  Cmat q(in_dim, out_dim);
  for (int j = 0; j < out_dim; ++j) {
    while (true) {
      std::vector<cplx> v(in_dim);
      const double scale = 1.0 / std::sqrt(2.0);
      for (int i = 0; i < in_dim; ++i)
        v[i] = cplx(rng.normal() * scale, rng.normal() * scale);
      // two Gram-Schmidt passes keep orthogonality near machine precision
      for (int pass = 0; pass < 2; ++pass) {
        for (int k = 0; k < j; ++k) {
          cplx dot = 0.0;
          for (int i = 0; i < in_dim; ++i) dot += std::conj(q(i, k)) * v[i];
          for (int i = 0; i < in_dim; ++i) v[i] -= dot * q(i, k);
        }
      }
      double norm_sq = 0.0;
      for (const cplx& x : v) norm_sq += std::norm(x);
      if (norm_sq > 1e-12) {
        const double inv_norm = 1.0 / std::sqrt(norm_sq);
        for (int i = 0; i < in_dim; ++i) q(i, j) = v[i] * inv_norm;
        break;
      }
    }
  }
  return q;
}

Cmat random_unitary(int dim, Rng& rng) { return random_isometry(dim, dim, rng); }

std::vector<Cmat> random_unital_kraus(int in_dim, int out_dim, int count,
                                      Rng& rng) {
  if (count < 1) throw ConfigError("random_unital_kraus: count must be >= 1");
  if (count * in_dim < out_dim)
    throw ConfigError("random_unital_kraus: too few factors to reach rank " +
                      std::to_string(out_dim));
  std::vector<Cmat> raw;
  raw.reserve(count);
  Cmat sum(out_dim, out_dim);
  for (int i = 0; i < count; ++i) {
    raw.push_back(random_gaussian(in_dim, out_dim, rng));
    sum = sum + adjoint(raw.back()) * raw.back();
  }
  const Cmat whiten =
      eig_hermitian(HermitianMatrix(sum))
          .rebuild([](double t) { return 1.0 / std::sqrt(t); })
          .mat();
  for (Cmat& c : raw) c = c * whiten;
  return raw;
}

std::vector<double> random_weights(int length, Rng& rng) {
  if (length < 1) throw ConfigError("random_weights: length must be >= 1");
  std::vector<double> w(length);
  for (double& x : w) x = rng.uniform(0.25, 1.25);
  return w;
}

OperatorField random_field(const std::vector<double>& weights, int dim,
                           Rng& rng) {
  std::vector<FieldPoint> pts;
  pts.reserve(weights.size());
  for (double w : weights) pts.push_back({w, random_spd(dim, rng)});
  return OperatorField(std::move(pts));
}

PositiveLinearMap random_map(PositiveLinearMap::Kind kind, int in_dim,
                             int out_dim, Rng& rng) {
  switch (kind) {
    case PositiveLinearMap::Kind::Compression: {
      if (out_dim > in_dim)
        throw DimensionError("random_map: compression needs out_dim <= in_dim");
      std::vector<int> all(in_dim);
      std::iota(all.begin(), all.end(), 1);
      for (int i = 0; i < out_dim; ++i) {
        const int j = rng.uniform_int(i, in_dim - 1);
        std::swap(all[i], all[j]);
      }
      std::vector<int> idx(all.begin(), all.begin() + out_dim);
      std::sort(idx.begin(), idx.end());
      return PositiveLinearMap::compression(in_dim, std::move(idx));
    }
    case PositiveLinearMap::Kind::Kraus:
      return PositiveLinearMap::kraus(
          random_unital_kraus(in_dim, out_dim, 3, rng));
    case PositiveLinearMap::Kind::DirectSumAverage: {
      if (out_dim < 1 || in_dim % out_dim != 0)
        throw DimensionError("random_map: dsavg needs out_dim dividing in_dim");
      const int blocks = in_dim / out_dim;
      std::vector<double> w = random_weights(blocks, rng);
      const double total = std::accumulate(w.begin(), w.end(), 0.0);
      for (double& x : w) x /= total;
      return PositiveLinearMap::direct_sum_average(
          std::vector<int>(blocks, out_dim), std::move(w));
    }
    case PositiveLinearMap::Kind::Pinching: {
      if (in_dim != out_dim)
        throw DimensionError("random_map: pinching needs in_dim == out_dim");
      // take < remaining at each step, so dim >= 2 yields >= 2 blocks
      std::vector<int> parts;
      int remaining = in_dim;
      while (remaining > 0) {
        const int take =
            remaining == 1 ? 1 : rng.uniform_int(1, remaining - 1);
        parts.push_back(take);
        remaining -= take;
      }
      const Cmat u = random_unitary(in_dim, rng);
      std::vector<Cmat> projections;
      int offset = 0;
      for (int sz : parts) {
        Cmat block(in_dim, sz);
        for (int r = 0; r < sz; ++r)
          for (int i = 0; i < in_dim; ++i) block(i, r) = u(i, offset + r);
        projections.push_back(block * adjoint(block));
        offset += sz;
      }
      return PositiveLinearMap::pinching(std::move(projections));
    }
  }
  throw Error("random_map: unknown kind");
}

MapField random_unital_map_field(int length, int in_dim, int out_dim,
                                 Rng& rng) {
  if (length < 1) throw ConfigError("random_unital_map_field: empty");
  std::vector<PositiveLinearMap::Kind> kinds = {
      PositiveLinearMap::Kind::Kraus};
  if (out_dim <= in_dim)
    kinds.push_back(PositiveLinearMap::Kind::Compression);
  if (in_dim == out_dim) kinds.push_back(PositiveLinearMap::Kind::Pinching);
  if (out_dim >= 1 && in_dim % out_dim == 0 && in_dim != out_dim)
    kinds.push_back(PositiveLinearMap::Kind::DirectSumAverage);

  std::vector<double> w = random_weights(length, rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<MapFieldPoint> pts;
  for (int t = 0; t < length; ++t)
    pts.push_back({w[t] / total,
                   random_map(kinds[t % kinds.size()], in_dim, out_dim, rng)});
  return MapField(std::move(pts));
}

}  // namespace llab
