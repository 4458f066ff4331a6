#include "bicotwist/report.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

namespace bicotwist {

using Json = nlohmann::ordered_json;

Index Report::passed() const {
  Index n = 0;
  for (const auto& c : checks)
    if (c.pass) ++n;
  return n;
}

Index Report::failed() const { return static_cast<Index>(checks.size()) - passed(); }

std::string Report::to_text() const {
  std::ostringstream os;
  os << "instance: " << instance << "\n";
  os << "command: " << command << "\n";
  for (const auto& c : checks) {
    os << (c.pass ? "pass" : "FAIL") << "  " << c.id;
    if (!c.witness.empty()) os << "  [" << c.witness << "]";
    os << "\n";
  }
  for (const auto& i : infos) os << "info  " << i.id << " = " << i.value << "\n";
  for (const auto& m : matrices) {
    os << "matrix  " << m.id << "\n";
    for (const auto& row : m.rows) {
      os << "  ";
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "  " : "") << row[c];
      os << "\n";
    }
  }
  for (const auto& [id, ms] : timings_ms) os << "time  " << id << " = " << ms << " ms\n";
  os << "summary: " << passed() << " passed, " << failed() << " failed\n";
  return os.str();
}

std::string Report::to_json() const {
  Json j = Json::object();
  j["instance"] = instance;
  j["command"] = command;
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json e = Json::object();
    e["id"] = c.id;
    e["status"] = c.pass ? "pass" : "fail";
    if (!c.witness.empty()) e["witness"] = c.witness;
    cs.push_back(e);
  }
  j["checks"] = cs;
  Json is = Json::array();
  for (const auto& i : infos) {
    Json e = Json::object();
    e["id"] = i.id;
    e["value"] = i.value;
    is.push_back(e);
  }
  j["info"] = is;
  Json ms = Json::array();
  for (const auto& m : matrices) {
    Json e = Json::object();
    e["id"] = m.id;
    e["rows"] = m.rows;
    ms.push_back(e);
  }
  j["matrices"] = ms;
  if (!timings_ms.empty()) {
    Json ts = Json::array();
    for (const auto& [id, v] : timings_ms) {
      Json e = Json::object();
      e["id"] = id;
      e["ms"] = v;
      ts.push_back(e);
    }
    j["timings"] = ts;
  }
  Json summary = Json::object();
  summary["passed"] = passed();
  summary["failed"] = failed();
  j["summary"] = summary;
  return j.dump(2) + "\n";
}

namespace {

void append(Report& r, std::vector<CheckResult> checks) {
  for (auto& c : checks) r.checks.push_back(std::move(c));
}

void append_prefixed(Report& r, const std::string& prefix, std::vector<CheckResult> checks) {
  for (auto& c : checks) {
    c.id = prefix + c.id;
    r.checks.push_back(std::move(c));
  }
}

std::vector<std::vector<std::string>> scalar_matrix_rows(const Mat& m) {
  std::vector<std::vector<std::string>> rows;
  for (Index i = 0; i < m.rows(); ++i) {
    std::vector<std::string> row;
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

CheckResult aggregate(const std::string& id, const std::vector<CheckResult>& checks) {
  CheckResult out{id};
  for (const auto& c : checks)
    if (!c.pass) {
      out.pass = false;
      out.witness = c.id + (c.witness.empty() ? "" : " " + c.witness);
      break;
    }
  return out;
}

}  // namespace

Report run_verify(const BuiltInstance& b) {
  Report r;
  r.instance = b.spec.name;
  r.command = "verify";
  append(r, verify_hopf(*b.algebra));
  append(r, verify_yd(b.yd));
  append(r, verify_bicovariance(*b.m));
  append(r, cocycle_checks(*b.algebra, b.cocycle.gamma));
  r.infos.push_back({"algebra.dimension", std::to_string(b.algebra->n)});
  r.infos.push_back({"algebra.commutative", b.algebra->is_commutative() ? "true" : "false"});
  r.infos.push_back(
      {"algebra.cocommutative", b.algebra->is_cocommutative() ? "true" : "false"});
  r.infos.push_back({"module.rank", std::to_string(b.m->d)});
  return r;
}

Report run_braiding(const BuiltInstance& b) {
  Report r;
  r.instance = b.spec.name;
  r.command = "braiding";
  append(r, verify_braiding(*b.sigma));
  r.infos.push_back(
      {"braiding.sigma_squared_identity", braiding_squared_is_identity(*b.sigma) ? "true" : "false"});
  r.matrices.push_back({"braiding.sigma_coefficients", scalar_matrix_rows(b.sigma->coeffs)});
  return r;
}

Report run_metrics(const BuiltInstance& b, std::optional<unsigned long> seed) {
  Report r;
  r.instance = b.spec.name;
  r.command = "metrics";

  if (b.metric) {
    const Metric& g = *b.metric;
    append(r, check_metric(g));
    r.infos.push_back({"metric.left_invariant", check_left_invariant(g) ? "true" : "false"});
    r.infos.push_back({"metric.right_invariant", check_right_invariant(g) ? "true" : "false"});
    r.infos.push_back({"metric.bi_invariant", check_bi_invariant(g) ? "true" : "false"});
    r.infos.push_back(
        {"metric.source", b.metric_from_enumeration ? "enumerated" : "instance"});
    r.checks.push_back(dual_reconstruction(*b.m));
    bool bilinear = metric_left_linear(g);
    r.infos.push_back({"metric.bilinear", bilinear ? "true" : "false"});
    if (g.scalar_entries() && bilinear && all_pass(check_metric(g))) {
      append(r, ev_coev_check(g));
      r.matrices.push_back({"metric.inverse", scalar_matrix_rows(metric_inverse(g))});
    } else if (!bilinear) {
      r.infos.push_back({"metric.ev_coev", "skipped: duality requires an A-bilinear metric"});
    }
    BeggsMajid bm = beggs_majid_check(*b.sigma, g.g);
    CheckResult bmc{"metric.beggs_majid_equivalence"};
    if (!bm.equivalent()) {
      bmc.pass = false;
      bmc.witness = std::string("wedge(h)=0 is ") + (bm.wedge_h_zero ? "true" : "false") +
                    " but g.sigma=g is " + (bm.symmetric ? "true" : "false");
    }
    r.checks.push_back(bmc);
    r.infos.push_back({"metric.wedge_h_zero", bm.wedge_h_zero ? "true" : "false"});
  } else {
    r.infos.push_back({"metric.source", "none"});
  }

  TwoForms tf = two_forms(*b.sigma);
  r.infos.push_back({"twoforms.invariant_dimension", std::to_string(tf.invariant_dim)});
  r.infos.push_back({"twoforms.full_dimension", std::to_string(tf.full_dim)});

  BiinvariantSpace space = enumerate_biinvariant(*b.sigma, seed);
  r.infos.push_back({"biinvariant.dimension", std::to_string(space.basis.size())});
  for (std::size_t s = 0; s < space.basis.size(); ++s)
    r.matrices.push_back(
        {"biinvariant.basis_" + std::to_string(s), scalar_matrix_rows(space.basis[s])});
  if (space.nondegenerate) {
    r.matrices.push_back(
        {"biinvariant.nondegenerate", scalar_matrix_rows(*space.nondegenerate)});
    r.infos.push_back({"biinvariant.nondegenerate_found", "true"});
  } else {
    r.infos.push_back(
        {"biinvariant.nondegenerate_found", space.basis.empty() ? "empty space" : "none found"});
  }
  return r;
}

Report run_twist(const BuiltInstance& b) {
  Report r;
  r.instance = b.spec.name;
  r.command = "twist";

  append(r, cocycle_checks(*b.algebra, b.cocycle.gamma));

  TwistContext ctx = make_twist_context(b.m, b.m2, b.sigma, b.cocycle);
  append_prefixed(r, "twist.algebra.", verify_hopf(*ctx.twisted_algebra));
  r.infos.push_back(
      {"twist.algebra_commutative", ctx.twisted_algebra->is_commutative() ? "true" : "false"});

  r.checks.push_back(aggregate("twist.bimodule_bicovariant", verify_bicovariance(*ctx.mg)));

  // Invariant subspaces are preserved: same kernels of (lco - 1 (x) id) and
  // (rco - id (x) 1) before and after twisting.
  CheckResult inv{"twist.invariants_preserved"};
  {
    auto invariant_kernels = [](const Bimod& m) {
      const Index n = m.algebra->n, D = m.D;
      Mat kl = Mat::Zero(n * D, D), kr = Mat::Zero(D * n, D);
      for (Index x = 0; x < D; ++x) {
        kl.col(x) = m.lco.col(x);
        kr.col(x) = m.rco.col(x);
        for (Index p = 0; p < n; ++p) {
          kl(p * D + x, x) -= m.algebra->unit(p);
          kr(x * n + p, x) -= m.algebra->unit(p);
        }
      }
      return std::make_pair(kernel(kl), kernel(kr));
    };
    auto [l0, r0] = invariant_kernels(*b.m);
    auto [l1, r1] = invariant_kernels(*ctx.mg);
    auto same_span = [](const Mat& x, const Mat& y) {
      return x.cols() == y.cols() && solve(x, y).exists && solve(y, x).exists;
    };
    if (!same_span(l0, l1) || !same_span(r0, r1)) {
      inv.pass = false;
      inv.witness = "invariant subspaces changed under twisting";
    }
  }
  r.checks.push_back(inv);

  append(r, check_yd_rebuild(*ctx.mg));
  append(r, xi_checks(ctx));

  Braiding twisted_sigma = construct_braiding(ctx.mg, ctx.mg2);
  auto twisted_sigma_ptr = std::make_shared<Braiding>(twisted_sigma);
  Braiding conjugated = sigma_twist(ctx);
  CheckResult thm{"twist.sigma_theorem_equality"};
  if (!is_zero(Mat(conjugated.full - twisted_sigma.full)) ||
      !is_zero(Mat(conjugated.coeffs - twisted_sigma.coeffs))) {
    thm.pass = false;
    thm.witness = "xi^-1 sigma xi differs from the braiding of the twisted module";
  }
  r.checks.push_back(thm);
  r.checks.push_back(aggregate("twist.sigma_braiding_valid", verify_braiding(twisted_sigma)));

  bool sq_before = braiding_squared_is_identity(*b.sigma);
  bool sq_after = braiding_squared_is_identity(twisted_sigma);
  CheckResult sq{"twist.sigma_squared_transfer"};
  if (sq_before && !sq_after) {
    sq.pass = false;
    sq.witness = "sigma^2 = 1 but sigma_gamma^2 != 1";
  }
  r.checks.push_back(sq);
  r.infos.push_back({"twist.sigma_squared_before", sq_before ? "true" : "false"});
  r.infos.push_back({"twist.sigma_squared_after", sq_after ? "true" : "false"});

  if (b.metric && check_bi_invariant(*b.metric) && all_pass(check_metric(*b.metric))) {
    const Metric& g = *b.metric;
    Metric gt = metric_twist(ctx, g, twisted_sigma_ptr);

    CheckResult two_routes{"twist.metric_two_routes"};
    if (!is_zero(Mat(Mat(g.gmap * ctx.xi) - gt.gmap))) {
      two_routes.pass = false;
      two_routes.witness = "closed form differs from g o xi";
    }
    r.checks.push_back(two_routes);
    r.checks.push_back(aggregate("twist.metric_valid", check_metric(gt)));
    CheckResult bi{"twist.metric_bi_invariant"};
    if (!check_bi_invariant(gt)) bi.pass = false;
    r.checks.push_back(bi);

    CheckResult fun{"twist.functoriality"};
    if (!is_zero(Mat(Mat(gt.gmap * conjugated.full) - Mat(g.gmap * b.sigma->full * ctx.xi)))) {
      fun.pass = false;
      fun.witness = "(g o sigma)_gamma != g_gamma o sigma_gamma";
    }
    r.checks.push_back(fun);

    append_prefixed(r, "twist.", vg_module_checks(g));
    append_prefixed(r, "twist.", vg_twist_remark_checks(ctx, g, gt));
    append_prefixed(r, "twist.", untwist_roundtrip_checks(ctx, g, gt));

    r.matrices.push_back({"twist.metric_twisted", [&] {
                            std::vector<std::vector<std::string>> rows;
                            for (Index i = 0; i < gt.g.rows; ++i) {
                              std::vector<std::string> row;
                              for (Index j = 0; j < gt.g.cols; ++j)
                                row.push_back(b.algebra->element_str(gt.g.at(i, j)));
                              rows.push_back(std::move(row));
                            }
                            return rows;
                          }()});
  } else {
    r.infos.push_back({"twist.metric", "no bi-invariant metric on this instance"});
  }
  return r;
}

Report run_all(const BuiltInstance& b, std::optional<unsigned long> seed) {
  Report r;
  r.instance = b.spec.name;
  r.command = "all";
  for (const Report& part :
       {run_verify(b), run_braiding(b), run_metrics(b, seed), run_twist(b)}) {
    for (const auto& c : part.checks) r.checks.push_back(c);
    for (const auto& i : part.infos) r.infos.push_back(i);
    for (const auto& m : part.matrices) r.matrices.push_back(m);
  }
  return r;
}

int run_command(const std::string& command, const std::string& target, const RunOptions& options,
                std::string* rendered) {
  auto emit = [&](const Report& rep) {
    std::string text = options.format == "json" ? rep.to_json() : rep.to_text();
    if (rendered) *rendered += text;
    if (!options.out_path.empty()) {
      std::ofstream out(options.out_path);
      if (!out) throw Error("cannot open output file " + options.out_path);
      out << text;
    }
  };

  InstanceSpec spec;
  try {
    bool is_builtin = false;
    for (const auto& n : builtin_names())
      if (n == target) is_builtin = true;
    if (is_builtin) {
      spec = builtin(target);
    } else {
      std::ifstream in(target);
      if (!in) throw Error("cannot open instance file " + target);
      std::stringstream buffer;
      buffer << in.rdbuf();
      spec = parse_instance(buffer.str());
    }
  } catch (const Error& e) {
    if (rendered) *rendered += std::string("error: ") + e.what() + "\n";
    return 2;
  }

  if (command != "verify" && command != "braiding" && command != "metrics" &&
      command != "twist" && command != "all") {
    if (rendered) *rendered += "error: unknown command " + command + "\n";
    return 2;
  }

  // Validation failures are findings (exit 1), malformed input is exit 2.
  auto validation = validate_instance(spec);
  if (!all_pass(validation)) {
    Report rep;
    rep.instance = spec.name;
    rep.command = command;
    rep.checks = validation;
    emit(rep);
    return 1;
  }

  Report rep;
  try {
    auto started = std::chrono::steady_clock::now();
    BuiltInstance b = build_instance(spec, options.seed);
    if (command == "verify")
      rep = run_verify(b);
    else if (command == "braiding")
      rep = run_braiding(b);
    else if (command == "metrics")
      rep = run_metrics(b, options.seed);
    else if (command == "twist")
      rep = run_twist(b);
    else
      rep = run_all(b, options.seed);
    if (options.timings) {
      auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - started)
                         .count();
      rep.timings_ms.push_back({command, static_cast<long>(elapsed)});
    }
  } catch (const Error& e) {
    Report err;
    err.instance = spec.name;
    err.command = command;
    err.checks.push_back({"instance.build", false, e.what()});
    emit(err);
    return 1;
  }
  emit(rep);
  return rep.failed() == 0 ? 0 : 1;
}

}  // namespace bicotwist
