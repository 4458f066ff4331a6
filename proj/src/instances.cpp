#include "bicotwist/instances.hpp"

#include <json.hpp>

#include <numeric>

namespace bicotwist {

using Json = nlohmann::ordered_json;

std::vector<std::vector<int>> cyclic_group_table(long n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) t[i][j] = static_cast<int>((i + j) % n);
  return t;
}

std::vector<std::vector<int>> product_group_table(const std::vector<long>& orders) {
  long total = 1;
  for (long o : orders) total *= o;
  auto decode = [&](long idx) {
    std::vector<long> x(orders.size());
    for (std::size_t s = orders.size(); s-- > 0;) {
      x[s] = idx % orders[s];
      idx /= orders[s];
    }
    return x;
  };
  auto encode = [&](const std::vector<long>& x) {
    long idx = 0;
    for (std::size_t s = 0; s < orders.size(); ++s) idx = idx * orders[s] + x[s];
    return idx;
  };
  std::vector<std::vector<int>> t(total, std::vector<int>(total));
  for (long i = 0; i < total; ++i)
    for (long j = 0; j < total; ++j) {
      auto xi = decode(i), xj = decode(j);
      std::vector<long> sum(orders.size());
      for (std::size_t s = 0; s < orders.size(); ++s) sum[s] = (xi[s] + xj[s]) % orders[s];
      t[i][j] = static_cast<int>(encode(sum));
    }
  return t;
}

namespace {

// S3 as permutations of {0,1,2}: e, c, c2, t, tc, tc2 with c the 3-cycle and
// t the transposition (01); products compose right-to-left.
const int kS3Perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}};

int s3_compose(int f, int g) {
  int h[3];
  for (int x = 0; x < 3; ++x) h[x] = kS3Perm[f][kS3Perm[g][x]];
  for (int k = 0; k < 6; ++k)
    if (h[0] == kS3Perm[k][0] && h[1] == kS3Perm[k][1] && h[2] == kS3Perm[k][2]) return k;
  return -1;
}

int s3_sign(int g) {
  int inv = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (kS3Perm[g][i] > kS3Perm[g][j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

Tensor3 trivial_action(const HopfAlgebra& a, Index d) {
  Tensor3 act(a.n, d, d);
  for (Index b = 0; b < a.n; ++b)
    for (Index i = 0; i < d; ++i) act(b, i, i) = a.counit(b);
  return act;
}

Index label_index(const std::vector<std::string>& labels, const std::string& name,
                  const std::string& field) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == name) return static_cast<Index>(i);
  throw Error(field + ": unknown basis label '" + name + "'");
}

Scalar parse_scalar_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_string()) return Scalar(parse_rational(j.get<std::string>()));
  if (j.is_object()) {
    if (!j.contains("N") || !j.contains("coeffs"))
      throw Error(field + ": scalar object needs fields N and coeffs");
    long order = j.at("N").get<long>();
    if (order <= 0) throw Error(field + ".N: order must be positive");
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("coeffs")) {
      if (c.is_number_integer())
        coeffs.push_back(Rational(c.get<long>()));
      else
        coeffs.push_back(parse_rational(c.get<std::string>()));
    }
    if (static_cast<long>(coeffs.size()) != euler_phi(order))
      throw Error(field + ".coeffs: expected phi(N) = " + std::to_string(euler_phi(order)) +
                  " entries");
    return Scalar(order, std::move(coeffs));
  }
  throw Error(field + ": expected integer, rational string or {N, coeffs} object");
}

Json scalar_to_json(const Scalar& s) {
  if (s.order() == 1) return Json(format_rational(s.rational_part()));
  Json out = Json::object();
  out["N"] = s.order();
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(format_rational(c));
  out["coeffs"] = coeffs;
  return out;
}

Tensor3 parse_tensor3(const Json& j, Index d0, Index d1, Index d2, const std::string& field) {
  Tensor3 t(d0, d1, d2);
  if (!j.is_array() || static_cast<Index>(j.size()) != d0)
    throw Error(field + ": expected an array of length " + std::to_string(d0));
  for (Index i = 0; i < d0; ++i) {
    if (!j[i].is_array() || static_cast<Index>(j[i].size()) != d1)
      throw Error(field + ": inner array length mismatch");
    for (Index k = 0; k < d1; ++k) {
      if (!j[i][k].is_array() || static_cast<Index>(j[i][k].size()) != d2)
        throw Error(field + ": innermost array length mismatch");
      for (Index l = 0; l < d2; ++l)
        t(i, k, l) = parse_scalar_json(j[i][k][l], field);
    }
  }
  return t;
}

Json tensor3_to_json(const Tensor3& t) {
  Json out = Json::array();
  for (Index i = 0; i < t.d0; ++i) {
    Json mid = Json::array();
    for (Index j = 0; j < t.d1; ++j) {
      Json inner = Json::array();
      for (Index k = 0; k < t.d2; ++k) inner.push_back(scalar_to_json(t(i, j, k)));
      mid.push_back(inner);
    }
    out.push_back(mid);
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> s3_group_table() {
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) t[i][j] = s3_compose(i, j);
  return t;
}

std::vector<std::string> s3_labels() { return {"e", "c", "c2", "t", "tc", "tc2"}; }

Mat bicharacter_matrix(const std::vector<long>& orders, long root_order,
                       const std::vector<std::vector<long>>& exponents) {
  long total = 1;
  for (long o : orders) total *= o;
  if (exponents.size() != orders.size())
    throw Error("cocycle.exponents: shape must match the number of cyclic factors");
  for (const auto& row : exponents)
    if (row.size() != orders.size()) throw Error("cocycle.exponents: matrix must be square");
  auto decode = [&](long idx) {
    std::vector<long> x(orders.size());
    for (std::size_t s = orders.size(); s-- > 0;) {
      x[s] = idx % orders[s];
      idx /= orders[s];
    }
    return x;
  };
  Mat gamma(total, total);
  for (long i = 0; i < total; ++i)
    for (long j = 0; j < total; ++j) {
      auto xi = decode(i), xj = decode(j);
      long e = 0;
      for (std::size_t s = 0; s < orders.size(); ++s)
        for (std::size_t t = 0; t < orders.size(); ++t)
          e += exponents[s][t] * xi[s] * xj[t];
      gamma(i, j) = Cyclotomic::root_of_unity(root_order, e);
    }
  return gamma;
}

std::vector<std::string> builtin_names() {
  return {"FIX-TRIV", "FIX-Z4", "FIX-Z4-1dim", "FIX-Z2xZ2", "FIX-S3", "FIX-FS3"};
}

InstanceSpec builtin(const std::string& name) {
  InstanceSpec s;
  s.name = name;
  if (name == "FIX-TRIV") {
    s.scalar_order = 1;
    s.group_name = "Z2";
    s.cyclic_orders = {2};
    s.table = cyclic_group_table(2);
    s.group_labels = {"e", "u"};
    s.yd_dim = 1;
    s.yd_degrees = {"e"};
    s.cocycle_type = "trivial";
    AMat g(1, 1, 2);
    g.at(0, 0) = Vec::Zero(2);
    g.at(0, 0)(0) = Scalar(1);
    s.metric = g;
    return s;
  }
  if (name == "FIX-Z4" || name == "FIX-Z4-1dim") {
    s.scalar_order = 4;
    s.group_name = "Z4";
    s.cyclic_orders = {4};
    s.table = cyclic_group_table(4);
    s.group_labels = {"e", "u", "u2", "u3"};
    if (name == "FIX-Z4") {
      s.yd_dim = 2;
      s.yd_degrees = {"u", "u3"};
      s.cocycle_type = "bicharacter";
      s.bichar_root_order = 4;
      s.bichar_exponents = {{1}};
      AMat g(2, 2, 4);
      for (auto& e : g.entries) e = Vec::Zero(4);
      g.at(0, 1)(0) = Scalar(1);
      g.at(1, 0)(0) = Scalar(1);
      s.metric = g;
    } else {
      s.yd_dim = 1;
      s.yd_degrees = {"u"};
      s.cocycle_type = "trivial";
    }
    return s;
  }
  if (name == "FIX-Z2xZ2") {
    s.scalar_order = 2;
    s.group_name = "Z2xZ2";
    s.cyclic_orders = {2, 2};
    s.table = product_group_table({2, 2});
    s.group_labels = {"e", "b", "a", "ab"};  // index = 2*a1 + a2 over (Z2)^2
    s.yd_dim = 2;
    s.yd_degrees = {"a", "b"};
    s.cocycle_type = "bicharacter";
    s.bichar_root_order = 2;
    s.bichar_exponents = {{0, 1}, {0, 0}};
    return s;
  }
  if (name == "FIX-S3") {
    s.scalar_order = 1;
    s.group_name = "S3";
    s.table = s3_group_table();
    s.group_labels = s3_labels();
    s.yd_dim = 3;
    // Conjugation Yetter-Drinfeld module on the transposition class,
    // v_t (x)-> v_t (x) t and v_t <| g = v_{g^-1 t g}.
    const int tr[3] = {3, 4, 5};
    auto trindex = [&](int g) {
      for (int k = 0; k < 3; ++k)
        if (tr[k] == g) return k;
      return -1;
    };
    Tensor3 act(6, 3, 3), coact(3, 3, 6);
    auto table = s3_group_table();
    for (int a = 0; a < 6; ++a) {
      int ainv = -1;
      for (int j = 0; j < 6; ++j)
        if (table[a][j] == 0) ainv = j;
      for (int i = 0; i < 3; ++i) {
        int conj = table[table[ainv][tr[i]]][a];
        act(a, i, trindex(conj)) = Scalar(1);
      }
    }
    for (int i = 0; i < 3; ++i) coact(i, i, tr[i]) = Scalar(1);
    s.yd_trivial_action = false;
    s.yd_action = act;
    s.yd_coaction = coact;
    s.cocycle_type = "trivial";
    return s;
  }
  if (name == "FIX-FS3") {
    s.scalar_order = 3;
    s.algebra_type = "function";
    s.group_name = "S3";
    s.table = s3_group_table();
    s.group_labels = s3_labels();
    s.yd_dim = 1;
    // One-dimensional comodule = character of S3; coassociativity forces the
    // degree to be group-like, so the sign combination sum_g sgn(g) d_g is
    // used (trivial action).
    Tensor3 coact(1, 1, 6);
    for (int g = 0; g < 6; ++g) coact(0, 0, g) = Scalar(s3_sign(g));
    s.yd_trivial_action = true;
    s.yd_coaction = coact;
    // Cocycle induced from the cyclic subgroup {e, c, c2}:
    // gamma(d_{c^a} (x) d_{c^b}) = (1/3) zeta_3^{ab}, zero off the subgroup.
    Mat gamma = Mat::Zero(6, 6);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        gamma(a, b) = Scalar(Rational(1, 3)) * Cyclotomic::root_of_unity(3, a * b);
    s.cocycle_type = "matrix";
    s.cocycle_values = gamma;
    AMat g(1, 1, 6);
    g.at(0, 0) = Vec::Zero(6);
    for (int i = 0; i < 6; ++i) g.at(0, 0)(i) = Scalar(1);  // the unit of Fun(S3)
    s.metric = g;
    return s;
  }
  throw Error("unknown builtin instance '" + name + "'");
}

InstanceSpec parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw Error(std::string("instance: invalid JSON: ") + e.what());
  }
  InstanceSpec s;
  if (!j.contains("name")) throw Error("instance.name: missing");
  s.name = j.at("name").get<std::string>();
  s.scalar_order = j.value("scalar_order", 1L);
  if (s.scalar_order <= 0) throw Error("instance.scalar_order: must be positive");

  if (!j.contains("algebra")) throw Error("instance.algebra: missing");
  const Json& alg = j.at("algebra");
  s.algebra_type = alg.value("type", std::string("group"));
  if (s.algebra_type != "group" && s.algebra_type != "function")
    throw Error("algebra.type: expected 'group' or 'function'");
  if (alg.contains("group")) {
    s.group_name = alg.at("group").get<std::string>();
    if (s.group_name == "Z2") {
      s.cyclic_orders = {2};
      s.table = cyclic_group_table(2);
      s.group_labels = {"e", "u"};
    } else if (s.group_name == "Z4") {
      s.cyclic_orders = {4};
      s.table = cyclic_group_table(4);
      s.group_labels = {"e", "u", "u2", "u3"};
    } else if (s.group_name == "Z2xZ2") {
      s.cyclic_orders = {2, 2};
      s.table = product_group_table({2, 2});
      s.group_labels = {"e", "b", "a", "ab"};
    } else if (s.group_name == "S3") {
      s.table = s3_group_table();
      s.group_labels = s3_labels();
    } else {
      throw Error("algebra.group: unknown built-in group '" + s.group_name + "'");
    }
  } else if (alg.contains("cyclic_product")) {
    for (const auto& o : alg.at("cyclic_product")) s.cyclic_orders.push_back(o.get<long>());
    s.table = product_group_table(s.cyclic_orders);
    long total = 1;
    for (long o : s.cyclic_orders) total *= o;
    for (long i = 0; i < total; ++i) s.group_labels.push_back("g" + std::to_string(i));
  } else if (alg.contains("table")) {
    for (const auto& row : alg.at("table")) {
      std::vector<int> r;
      for (const auto& v : row) r.push_back(v.get<int>());
      s.table.push_back(std::move(r));
    }
    if (alg.contains("labels"))
      for (const auto& l : alg.at("labels")) s.group_labels.push_back(l.get<std::string>());
  } else {
    throw Error("algebra: expected one of 'group', 'cyclic_product', 'table'");
  }

  if (!j.contains("yd_module")) throw Error("instance.yd_module: missing");
  const Json& yd = j.at("yd_module");
  s.yd_dim = yd.value("dim", 0L);
  if (s.yd_dim <= 0) throw Error("yd_module.dim: must be positive");
  if (yd.contains("degrees")) {
    for (const auto& dgl : yd.at("degrees")) s.yd_degrees.push_back(dgl.get<std::string>());
    if (static_cast<Index>(s.yd_degrees.size()) != s.yd_dim)
      throw Error("yd.degrees length: expected " + std::to_string(s.yd_dim) + " entries, got " +
                  std::to_string(s.yd_degrees.size()));
  }
  if (yd.contains("action") && yd.at("action").is_string()) {
    if (yd.at("action").get<std::string>() != "trivial")
      throw Error("yd_module.action: expected 'trivial' or an explicit tensor");
    s.yd_trivial_action = true;
  } else if (yd.contains("action")) {
    s.yd_trivial_action = false;
    s.yd_action = parse_tensor3(yd.at("action"), static_cast<Index>(s.table.size()), s.yd_dim,
                                s.yd_dim, "yd_module.action");
  }
  if (yd.contains("coaction"))
    s.yd_coaction = parse_tensor3(yd.at("coaction"), s.yd_dim, s.yd_dim,
                                  static_cast<Index>(s.table.size()), "yd_module.coaction");
  if (s.yd_degrees.empty() && !s.yd_coaction)
    throw Error("yd_module: needs either 'degrees' or an explicit 'coaction'");

  if (j.contains("cocycle")) {
    const Json& co = j.at("cocycle");
    s.cocycle_type = co.value("type", std::string("trivial"));
    if (s.cocycle_type == "bicharacter") {
      if (s.cyclic_orders.empty())
        throw Error("cocycle.bicharacter: requires a cyclic-product group presentation");
      s.bichar_root_order = co.value("root_order", 0L);
      if (s.bichar_root_order == 0) {
        s.bichar_root_order = 1;
        for (long o : s.cyclic_orders) s.bichar_root_order = std::lcm(s.bichar_root_order, o);
      }
      if (!co.contains("exponents")) throw Error("cocycle.exponents: missing");
      for (const auto& row : co.at("exponents")) {
        std::vector<long> r;
        for (const auto& v : row) r.push_back(v.get<long>());
        s.bichar_exponents.push_back(std::move(r));
      }
    } else if (s.cocycle_type == "matrix") {
      if (!co.contains("values")) throw Error("cocycle.values: missing");
      const Json& vals = co.at("values");
      const Index n = static_cast<Index>(s.table.size());
      if (static_cast<Index>(vals.size()) != n) throw Error("cocycle.values: expected n rows");
      Mat gamma(n, n);
      for (Index r = 0; r < n; ++r) {
        if (static_cast<Index>(vals[r].size()) != n)
          throw Error("cocycle.values: expected n columns");
        for (Index c = 0; c < n; ++c)
          gamma(r, c) = parse_scalar_json(vals[r][c], "cocycle.values");
      }
      s.cocycle_values = gamma;
    } else if (s.cocycle_type != "trivial") {
      throw Error("cocycle.type: expected 'trivial', 'bicharacter' or 'matrix'");
    }
  }

  if (j.contains("metric")) {
    const Json& met = j.at("metric");
    const Index n = static_cast<Index>(s.table.size());
    if (static_cast<Index>(met.size()) != s.yd_dim)
      throw Error("metric: expected dim rows");
    AMat g(s.yd_dim, s.yd_dim, n);
    for (Index r = 0; r < s.yd_dim; ++r) {
      if (static_cast<Index>(met[r].size()) != s.yd_dim)
        throw Error("metric: expected dim columns");
      for (Index c = 0; c < s.yd_dim; ++c) {
        const Json& entry = met[r][c];
        Vec e = Vec::Zero(n);
        if (entry.is_array()) {
          if (static_cast<Index>(entry.size()) != n)
            throw Error("metric: algebra-element entry needs n coefficients");
          for (Index b = 0; b < n; ++b) e(b) = parse_scalar_json(entry[b], "metric");
        } else {
          // A plain scalar means scalar . 1.
          Scalar v = parse_scalar_json(entry, "metric");
          if (s.algebra_type == "group") {
            int identity = -1;
            for (std::size_t ei = 0; ei < s.table.size() && identity < 0; ++ei) {
              bool ok = true;
              for (std::size_t jj = 0; jj < s.table.size() && ok; ++jj)
                ok = s.table[ei][jj] == static_cast<int>(jj) &&
                     s.table[jj][ei] == static_cast<int>(jj);
              if (ok) identity = static_cast<int>(ei);
            }
            if (identity < 0) throw Error("metric: group table has no identity");
            e(identity) = v;
          } else {
            for (Index b = 0; b < n; ++b) e(b) = v;
          }
        }
        g.at(r, c) = e;
      }
    }
    s.metric = g;
  }
  return s;
}

std::string serialize_instance(const InstanceSpec& s) {
  Json j = Json::object();
  j["name"] = s.name;
  j["scalar_order"] = s.scalar_order;
  Json alg = Json::object();
  alg["type"] = s.algebra_type;
  if (!s.group_name.empty()) {
    alg["group"] = s.group_name;
  } else if (!s.cyclic_orders.empty()) {
    alg["cyclic_product"] = s.cyclic_orders;
  } else {
    alg["table"] = s.table;
    alg["labels"] = s.group_labels;
  }
  j["algebra"] = alg;
  Json yd = Json::object();
  yd["dim"] = s.yd_dim;
  if (!s.yd_degrees.empty()) yd["degrees"] = s.yd_degrees;
  if (s.yd_trivial_action)
    yd["action"] = "trivial";
  else if (s.yd_action)
    yd["action"] = tensor3_to_json(*s.yd_action);
  if (s.yd_coaction && s.yd_degrees.empty()) yd["coaction"] = tensor3_to_json(*s.yd_coaction);
  j["yd_module"] = yd;
  Json co = Json::object();
  co["type"] = s.cocycle_type;
  if (s.cocycle_type == "bicharacter") {
    co["root_order"] = s.bichar_root_order;
    co["exponents"] = s.bichar_exponents;
  } else if (s.cocycle_type == "matrix") {
    Json vals = Json::array();
    for (Index r = 0; r < s.cocycle_values->rows(); ++r) {
      Json row = Json::array();
      for (Index c = 0; c < s.cocycle_values->cols(); ++c)
        row.push_back(scalar_to_json((*s.cocycle_values)(r, c)));
      vals.push_back(row);
    }
    co["values"] = vals;
  }
  j["cocycle"] = co;
  if (s.metric) {
    Json met = Json::array();
    for (Index r = 0; r < s.metric->rows; ++r) {
      Json row = Json::array();
      for (Index c = 0; c < s.metric->cols; ++c) {
        Json entry = Json::array();
        for (Index b = 0; b < s.metric->at(r, c).size(); ++b)
          entry.push_back(scalar_to_json(s.metric->at(r, c)(b)));
        row.push_back(entry);
      }
      met.push_back(row);
    }
    j["metric"] = met;
  }
  return j.dump(2) + "\n";
}

namespace {

YDModule resolve_yd(const InstanceSpec& s, std::shared_ptr<const HopfAlgebra> algebra) {
  const HopfAlgebra& a = *algebra;
  YDModule yd;
  yd.host = algebra;
  yd.dim = s.yd_dim;
  if (s.yd_trivial_action && !s.yd_action)
    yd.action = trivial_action(a, s.yd_dim);
  else if (s.yd_action)
    yd.action = *s.yd_action;
  else
    throw Error("yd_module.action: missing");
  if (s.yd_coaction) {
    yd.coaction = *s.yd_coaction;
  } else {
    yd.coaction = Tensor3(s.yd_dim, s.yd_dim, a.n);
    for (Index i = 0; i < s.yd_dim; ++i) {
      Index deg = label_index(a.labels, s.yd_degrees[i], "yd.degrees");
      yd.coaction(i, i, deg) = Scalar(1);
    }
  }
  return yd;
}

Mat resolve_cocycle_matrix(const InstanceSpec& s, const HopfAlgebra& a) {
  if (s.cocycle_type == "trivial") {
    Mat gamma(a.n, a.n);
    for (Index i = 0; i < a.n; ++i)
      for (Index j = 0; j < a.n; ++j) gamma(i, j) = a.counit(i) * a.counit(j);
    return gamma;
  }
  if (s.cocycle_type == "bicharacter") {
    if (s.algebra_type != "group")
      throw Error("cocycle.bicharacter: only supported on group algebras");
    return bicharacter_matrix(s.cyclic_orders, s.bichar_root_order, s.bichar_exponents);
  }
  if (s.cocycle_type == "matrix") return *s.cocycle_values;
  throw Error("cocycle.type: unknown '" + s.cocycle_type + "'");
}

}  // namespace

std::vector<CheckResult> validate_instance(const InstanceSpec& s) {
  std::vector<CheckResult> out;

  CheckResult group{"instance.group_table"};
  try {
    validate_group_table(s.table, s.group_labels);
  } catch (const Error& e) {
    group.pass = false;
    group.witness = e.what();
  }
  out.push_back(group);
  if (!group.pass) return out;

  std::shared_ptr<const HopfAlgebra> algebra;
  CheckResult hopf{"instance.hopf"};
  try {
    algebra = std::make_shared<HopfAlgebra>(
        s.algebra_type == "group" ? group_algebra(s.table, s.group_labels, s.scalar_order)
                                  : function_algebra(s.table, s.group_labels, s.scalar_order));
    for (const auto& c : verify_hopf(*algebra))
      if (!c.pass) {
        hopf.pass = false;
        hopf.witness = c.id + " " + c.witness;
        break;
      }
  } catch (const Error& e) {
    hopf.pass = false;
    hopf.witness = e.what();
  }
  out.push_back(hopf);
  if (!hopf.pass) return out;

  CheckResult yd{"instance.yd"};
  try {
    YDModule mod = resolve_yd(s, algebra);
    for (const auto& c : verify_yd(mod))
      if (!c.pass) {
        yd.pass = false;
        yd.witness = c.id + " " + c.witness;
        break;
      }
  } catch (const Error& e) {
    yd.pass = false;
    yd.witness = e.what();
  }
  out.push_back(yd);

  CheckResult co{"instance.cocycle"};
  try {
    Mat gamma = resolve_cocycle_matrix(s, *algebra);
    for (const auto& c : cocycle_checks(*algebra, gamma))
      if (!c.pass) {
        co.pass = false;
        co.witness = c.id + " " + c.witness;
        break;
      }
  } catch (const Error& e) {
    co.pass = false;
    co.witness = e.what();
  }
  out.push_back(co);

  return out;
}

BuiltInstance build_instance(const InstanceSpec& s, std::optional<unsigned long> seed) {
  BuiltInstance b;
  b.spec = s;
  b.algebra = std::make_shared<HopfAlgebra>(
      s.algebra_type == "group" ? group_algebra(s.table, s.group_labels, s.scalar_order)
                                : function_algebra(s.table, s.group_labels, s.scalar_order));
  b.yd = resolve_yd(s, b.algebra);
  b.m = std::make_shared<Bimod>(build_bimodule(b.algebra, b.yd));
  b.m2 = std::make_shared<Bimod>(tensor_bimodule(*b.m, *b.m));
  b.sigma = std::make_shared<Braiding>(construct_braiding(b.m, b.m2));
  b.cocycle = make_cocycle(b.algebra, resolve_cocycle_matrix(s, *b.algebra));
  if (s.metric) {
    b.metric = make_metric(b.m, b.m2, b.sigma, *s.metric);
  } else {
    BiinvariantSpace space = enumerate_biinvariant(*b.sigma, seed);
    if (space.nondegenerate) {
      b.metric = make_metric(b.m, b.m2, b.sigma, *space.nondegenerate);
      b.metric_from_enumeration = true;
    }
  }
  return b;
}

}  // namespace bicotwist
