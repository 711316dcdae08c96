#pragma once

#include <string>
#include <vector>

#include "llab/eig.hpp"
#include "llab/matrix.hpp"
#include "llab/rng.hpp"

namespace llab {

// Concrete positive linear map families. Application is kind-specific;
// kraus_factors() produces an explicit Kraus factorization of any kind so
// the representations can be cross-checked against one another.
class PositiveLinearMap {
 public:
  enum class Kind { Compression, Kraus, DirectSumAverage, Pinching };

  // Keeps rows/columns `indices` (1-based, strictly increasing).
  static PositiveLinearMap compression(int in_dim, std::vector<int> indices);
  // A -> sum_i C_i* A C_i; factors share the shape in_dim x out_dim.
  static PositiveLinearMap kraus(std::vector<Cmat> factors);
  // A -> sum_i w_i A_ii over equal diagonal blocks; weights sum to 1.
  static PositiveLinearMap direct_sum_average(std::vector<int> block_dims,
                                              std::vector<double> weights);
  // A -> sum_i P_i A P_i for an orthogonal resolution of identity.
  static PositiveLinearMap pinching(std::vector<Cmat> projections);
  static PositiveLinearMap identity_map(int dim);

  HermitianMatrix operator()(const HermitianMatrix& a) const;

  Kind kind() const { return kind_; }
  const char* kind_name() const;
  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  bool unital() const { return unital_; }

  std::vector<Cmat> kraus_factors() const;

  // w * Phi as a Kraus map (factors scaled by sqrt(w)); building block for
  // families with sum_i Phi_i(I) = I.
  PositiveLinearMap scaled(double w) const;

  const std::vector<int>& indices() const { return indices_; }
  const std::vector<Cmat>& factors() const { return factors_; }
  const std::vector<int>& block_dims() const { return block_dims_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Cmat>& projections() const { return projections_; }

 private:
  PositiveLinearMap(Kind kind, int in_dim, int out_dim);
  void spot_check_positivity() const;

  Kind kind_;
  int in_dim_;
  int out_dim_;
  bool unital_ = false;
  std::vector<int> indices_;       // Compression, 1-based
  std::vector<Cmat> factors_;      // Kraus
  std::vector<int> block_dims_;    // DirectSumAverage
  std::vector<double> weights_;    // DirectSumAverage
  std::vector<Cmat> projections_;  // Pinching
};

// Finite weighted family {(mu_t, A_t)} standing in for a continuous field
// with bounded measure.
struct FieldPoint {
  double weight;
  HermitianMatrix matrix;
};

class OperatorField {
 public:
  explicit OperatorField(std::vector<FieldPoint> points);

  int length() const { return static_cast<int>(points_.size()); }
  int dim() const { return points_.front().matrix.dim(); }
  const FieldPoint& operator[](int t) const { return points_[t]; }
  const std::vector<FieldPoint>& points() const { return points_; }

  // Least member eigenvalue, computed once at construction.
  double member_min_eigenvalue() const { return member_min_eig_; }
  bool strictly_positive(double floor = kDefaultEigFloor) const {
    return member_min_eig_ > floor;
  }

  OperatorField scaled(double c) const;  // {(mu_t, c * A_t)}

 private:
  std::vector<FieldPoint> points_;
  double member_min_eig_;
};

// Sum_t mu_t A_t
HermitianMatrix integrate_field(const OperatorField& f);

// Fields entering one comparison must carry one and the same measure.
bool same_weights(const OperatorField& a, const OperatorField& b);

struct MapFieldPoint {
  double weight;
  PositiveLinearMap map;
};

class MapField {
 public:
  explicit MapField(std::vector<MapFieldPoint> points);

  int length() const { return static_cast<int>(points_.size()); }
  int in_dim() const { return points_.front().map.in_dim(); }
  int out_dim() const { return points_.front().map.out_dim(); }
  const MapFieldPoint& operator[](int t) const { return points_[t]; }
  const std::vector<MapFieldPoint>& points() const { return points_; }

  // Sum_t w_t Phi_t(I) = I within 1e-10, decided at construction.
  bool unital() const { return unital_; }

 private:
  std::vector<MapFieldPoint> points_;
  bool unital_;
};

// For an isometry C (in x out, C*C = I), D = sqrt(I - CC*) and
//   U = [C  D; 0 -C*],   V = [C -D; 0  C*]
// are unitary on the (in+out)-dimensional space, and (U*XU + V*XV)/2 is
// block-diagonal with top-left block C*AC for X = A (+) B.
struct DilationPair {
  Cmat u;
  Cmat v;
};

DilationPair dilation_pair(const Cmat& c);

// Seeded generators. All draws come from the caller's Rng, so a seed fully
// determines the output.
Cmat random_gaussian(int rows, int cols, Rng& rng);
HermitianMatrix random_hermitian(int dim, Rng& rng);  // (G + G*)/2
HermitianMatrix random_psd(int dim, Rng& rng);        // G* G
HermitianMatrix random_spd(int dim, Rng& rng);        // G* G + 1e-3 dim I
Cmat random_isometry(int in_dim, int out_dim, Rng& rng);
Cmat random_unitary(int dim, Rng& rng);
// Factors C_i (in x out) with sum C_i* C_i = I within 1e-12.
std::vector<Cmat> random_unital_kraus(int in_dim, int out_dim, int count,
                                      Rng& rng);
std::vector<double> random_weights(int length, Rng& rng);
OperatorField random_field(const std::vector<double>& weights, int dim,
                           Rng& rng);
PositiveLinearMap random_map(PositiveLinearMap::Kind kind, int in_dim,
                             int out_dim, Rng& rng);
// Mixed-kind unital family: weights sum to 1, each member unital.
MapField random_unital_map_field(int length, int in_dim, int out_dim, Rng& rng);

}  // namespace llab
