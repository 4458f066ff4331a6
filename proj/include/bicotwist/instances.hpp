#pragma once

#include "bicotwist/twist.hpp"

namespace bicotwist {

// Parsed description of one instance: the Hopf algebra, the Yetter-Drinfeld
// data, an optional cocycle and an optional metric coefficient matrix.
struct InstanceSpec {
  std::string name;
  long scalar_order = 1;

  std::string algebra_type = "group";  // "group" | "function"
  std::string group_name;              // builtin name, when used
  std::vector<long> cyclic_orders;     // cyclic product presentation, when known
  std::vector<std::vector<int>> table;
  std::vector<std::string> group_labels;

  Index yd_dim = 0;
  bool yd_trivial_action = true;
  std::vector<std::string> yd_degrees;  // group-like basis labels (diagonal coaction)
  std::optional<Tensor3> yd_action;     // explicit tensors otherwise
  std::optional<Tensor3> yd_coaction;

  std::string cocycle_type = "trivial";  // "trivial" | "bicharacter" | "matrix"
  long bichar_root_order = 0;
  std::vector<std::vector<long>> bichar_exponents;
  std::optional<Mat> cocycle_values;

  std::optional<AMat> metric;
};

// Built-in fixtures: FIX-TRIV, FIX-Z4, FIX-Z4-1dim, FIX-Z2xZ2, FIX-S3,
// FIX-FS3. Unknown names are an Error.
InstanceSpec builtin(const std::string& name);
std::vector<std::string> builtin_names();

// JSON round trip with field-level diagnostics.
InstanceSpec parse_instance(const std::string& json_text);
std::string serialize_instance(const InstanceSpec& spec);

// Group/YD/cocycle validation with precise diagnostics, without building the
// heavier derived objects.
std::vector<CheckResult> validate_instance(const InstanceSpec& spec);

// Everything the verification suites run on. The metric comes from the
// instance when present, otherwise from the nondegenerate representative of
// the bi-invariant solution space (when one exists).
struct BuiltInstance {
  InstanceSpec spec;
  std::shared_ptr<const HopfAlgebra> algebra;
  YDModule yd;
  std::shared_ptr<const Bimod> m;
  std::shared_ptr<const Bimod> m2;
  std::shared_ptr<const Braiding> sigma;
  Cocycle cocycle;  // trivial when the instance declares none
  std::optional<Metric> metric;
  bool metric_from_enumeration = false;
};
BuiltInstance build_instance(const InstanceSpec& spec,
                             std::optional<unsigned long> seed = std::nullopt);

// Canonical multiplication tables.
std::vector<std::vector<int>> cyclic_group_table(long n);
std::vector<std::vector<int>> product_group_table(const std::vector<long>& orders);
std::vector<std::vector<int>> s3_group_table();
std::vector<std::string> s3_labels();

// Full cocycle value matrix of a bicharacter on a product of cyclic groups:
// gamma(g (x) h) = zeta_root^(sum E[s][t] x_s y_t) on exponent tuples.
Mat bicharacter_matrix(const std::vector<long>& orders, long root_order,
                       const std::vector<std::vector<long>>& exponents);

}  // namespace bicotwist
