#include "diolab/config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "diolab/errors.hpp"

namespace diolab {
namespace {

using nlohmann::json;

FormComponent parse_component(const json& j, int n) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "generalized_quadratic") {
    GeneralizedQuadratic gq;
    gq.p = j.at("p").get<int>();
    gq.q = j.at("q").get<int>();
    gq.beta = j.value("beta", 2.0);
    return gq;
  }
  if (kind == "coordinate_product") return CoordinateProduct{j.value("omega", 1.0)};
  if (kind == "signed_product") return SignedProduct{};
  if (kind == "coordinate_max") {
    CoordinateMax cm;
    cm.p = j.at("p").get<int>();
    cm.z = j.at("z").get<std::vector<double>>();
    return cm;
  }
  if (kind == "linear") {
    auto coeffs = j.at("coeffs").get<std::vector<double>>();
    LinearComponent lin;
    lin.coeffs = Eigen::Map<const Eigen::VectorXd>(coeffs.data(), coeffs.size());
    return lin;
  }
  throw InvalidSpec("unknown form kind: " + kind);
}

Eigen::VectorXd parse_vec(const json& j) {
  auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
}

PsiComponent parse_psi_component(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "power_log") {
    PowerLog pl;
    pl.s = j.at("s").get<double>();
    pl.eps = j.value("eps", 0.0);
    pl.t_star = j.value("t_star", 0.0);
    pl.coef = j.value("coef", 1.0);
    return pl;
  }
  if (kind == "constant") return ConstantPsi{j.at("c").get<double>()};
  if (kind == "tabulated") {
    TabulatedPsi tab;
    for (const auto& kn : j.at("knots"))
      tab.knots.emplace_back(kn.at(0).get<double>(), kn.at(1).get<double>());
    return tab;
  }
  throw InvalidSpec("unknown psi kind: " + kind);
}

std::string verdict_name(const CriterionVerdict& v) {
  return v.convergent ? "Convergent" : "Divergent";
}

std::string family_name(CriterionFamily f) {
  switch (f) {
    case CriterionFamily::RegularZeroSet: return "regular";
    case CriterionFamily::Product: return "product";
    case CriterionFamily::Max: return "max";
  }
  return "?";
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

struct CheckOutcome {
  bool requested = false;
  bool passed = true;
  json detail = json::object();
};

// One experiment dispatch; throws domain errors upward to run_experiment.
void dispatch(json& cfg, bool check, RunResult& res, CheckOutcome& chk) {
  std::string exp = cfg.at("experiment").get<std::string>();
  std::uint64_t seed = cfg.value("seed", 1ull);
  long long budget = cfg.value("budget", kDefaultBudget);
  cfg["seed"] = seed;
  cfg["budget"] = budget;
  json expect = cfg.value("expect", json::object());
  chk.requested = check;
  json summary;

  if (exp == "enumerate") {
    int n = cfg.at("n").get<int>();
    Norm nu = parse_norm(cfg.value("norm", json("sup")));
    PointSet ps = parse_points(cfg.value("points", json("nonzero")));
    double S = cfg.value("S", 0.0);
    double T = cfg.at("T").get<double>();
    std::ostringstream csv;
    for (int i = 0; i < n; ++i) csv << (i ? "," : "") << "v" << (i + 1);
    csv << "\n";
    long long count = 0;
    enumerate_annulus(ps, nu, S, T, n,
                      [&](const Eigen::VectorXi& v) {
                        for (int i = 0; i < n; ++i) csv << (i ? "," : "") << v[i];
                        csv << "\n";
                        ++count;
                      },
                      budget);
    res.csv = csv.str();
    summary["count"] = count;
    if (check && expect.contains("count"))
      chk.passed = (count == expect["count"].get<long long>());
  } else if (exp == "criterion") {
    int n = cfg.at("n").get<int>();
    Form form = parse_form(cfg.at("form"), n);
    Psi psi = parse_psi(cfg.at("psi"));
    Eigen::VectorXd xi = cfg.contains("xi") ? parse_vec(cfg.at("xi"))
                                            : Eigen::VectorXd::Zero(form.ell());
    CriterionFamily fam = parse_family(cfg, form);
    std::string mode = cfg.value("mode", "asymptotic");
    cfg["mode"] = mode;
    CriterionVerdict v;
    if (mode == "asymptotic") {
      v = asymptotic_criterion(form, psi, xi, fam);
    } else if (mode == "series") {
      double r = cfg.value("r", 2.0);
      cfg["r"] = r;
      v = uniform_series_criterion(form, psi, xi, r, fam);
    } else {
      throw InvalidSpec("criterion mode must be asymptotic or series");
    }
    summary["verdict"] = verdict_name(v);
    summary["family"] = family_name(v.family);
    summary["xi_branch"] = v.xi_branch == XiBranch::ZeroShift ? "zero" : "nonzero";
    if (check && expect.contains("verdict"))
      chk.passed = (summary["verdict"] == expect["verdict"]);
  } else if (exp == "volume") {
    std::string vk = cfg.value("volume", "mc");
    cfg["volume"] = vk;
    if (vk == "product") {
      int n = cfg.at("n").get<int>();
      double value = volume_product_closed_form(n, parse_psi(cfg.at("psi")),
                                                cfg.at("S").get<double>(),
                                                cfg.at("T").get<double>());
      summary = {{"value", value}, {"stderr", 0.0}, {"method", "closed_form"}};
    } else if (vk == "max") {
      int n = cfg.at("n").get<int>();
      double value = volume_max_closed_form(
          n, cfg.at("p").get<int>(), cfg.at("z").get<std::vector<double>>(),
          parse_psi(cfg.at("psi")), cfg.at("S").get<double>(), cfg.at("T").get<double>());
      summary = {{"value", value}, {"stderr", 0.0}, {"method", "closed_form"}};
    } else if (vk == "mc") {
      int n = cfg.at("n").get<int>();
      Form form = parse_form(cfg.at("form"), n);
      Eigen::VectorXd xi = cfg.contains("xi") ? parse_vec(cfg.at("xi"))
                                              : Eigen::VectorXd::Zero(form.ell());
      Norm nu = parse_norm(cfg.value("norm", json("sup")));
      Region region{form, xi, ABound{parse_psi(cfg.at("psi"))}, nu,
                    cfg.value("S", 0.0), cfg.at("T").get<double>()};
      if (cfg.contains("eps")) region.bound = BBound{parse_vec(cfg.at("eps"))};
      long long samples = cfg.value("samples", 1'000'000ll);
      cfg["samples"] = samples;
      auto est = mc_volume(region, samples, seed);
      summary = {{"value", est.value},
                 {"stderr", est.stderr_},
                 {"method", "monte_carlo"},
                 {"samples", est.samples},
                 {"seed", seed}};
    } else {
      throw InvalidSpec("volume must be product, max or mc");
    }
    if (check && expect.contains("value")) {
      double tol = expect.value("tol", 1e-9);
      chk.passed =
          std::fabs(summary["value"].get<double>() - expect["value"].get<double>()) <= tol;
    }
  } else if (exp == "siegel-test") {
    Eigen::VectorXd lo = parse_vec(cfg.at("box_lo"));
    Eigen::VectorXd hi = parse_vec(cfg.at("box_hi"));
    long long samples = cfg.value("samples", 100'000ll);
    cfg["samples"] = samples;
    auto r = torus_siegel_mean_test(lo, hi, samples, seed);
    summary = {{"empirical_mean", r.empirical_mean},
               {"measure", r.measure},
               {"stderr", r.stderr_},
               {"z_score", r.z_score},
               {"samples", r.samples}};
    if (check) {
      double tol = expect.value("mean_tol", 0.005);
      chk.passed = std::fabs(r.empirical_mean - r.measure) <= tol;
    }
  } else if (exp == "count" || exp == "finiteness" || exp == "uniform") {
    int n = cfg.at("n").get<int>();
    Form form = parse_form(cfg.at("form"), n);
    Psi psi = parse_psi(cfg.at("psi"));
    Eigen::VectorXd xi = cfg.contains("xi") ? parse_vec(cfg.at("xi"))
                                            : Eigen::VectorXd::Zero(form.ell());
    Norm nu = parse_norm(cfg.value("norm", json("euclidean")));
    PointSet ps = parse_points(cfg.value("points", json("nonzero")));
    GroupKind group = parse_group(cfg.value("group", json("sl")));
    int g_samples = cfg.value("g_samples", 4);
    cfg["g_samples"] = g_samples;
    std::ostringstream csv, plot;
    csv << "g_id,seed,T,count,predicted,ratio\n";

    if (exp == "count") {
      auto schedule = cfg.at("T_schedule").get<std::vector<double>>();
      long long mc_samples = cfg.value("mc_samples", 2'000'000ll);
      cfg["mc_samples"] = mc_samples;
      auto records = counting_ratio_experiment(form, xi, psi, nu, ps, group, schedule,
                                               g_samples, seed, mc_samples, budget);
      plot << "T,ratio\n";
      std::vector<double> last_ratios;
      for (const auto& r : records) {
        csv << r.g_id << "," << r.seed << "," << fmt(r.T) << "," << r.count << ","
            << fmt(r.predicted) << ",";
        if (r.ratio_defined) csv << fmt(r.ratio);
        csv << "\n";
        if (r.ratio_defined) plot << fmt(r.T) << "," << fmt(r.ratio) << "\n";
        if (r.T == schedule.back() && r.ratio_defined) last_ratios.push_back(r.ratio);
      }
      summary["records"] = records.size();
      if (!last_ratios.empty()) {
        summary["median_ratio_at_T_max"] = median(last_ratios);
      }
      if (check && expect.contains("ratio_band") && !last_ratios.empty()) {
        double m = median(last_ratios);
        auto band = expect["ratio_band"].get<std::vector<double>>();
        chk.passed = (m >= band[0] && m <= band[1]);
        chk.detail["median_ratio"] = m;
      }
      res.plot_csv = plot.str();
    } else if (exp == "finiteness") {
      double T_max = cfg.at("T_max").get<double>();
      auto records = finiteness_experiment(form, xi, psi, nu, ps, group, T_max,
                                           g_samples, seed, budget);
      int stabilized = 0;
      for (const auto& r : records) {
        csv << r.g_id << "," << r.seed << "," << fmt(0.5 * T_max) << "," << r.count_half
            << ",,\n";
        csv << r.g_id << "," << r.seed << "," << fmt(T_max) << "," << r.count_full
            << ",,\n";
        if (r.stabilized) ++stabilized;
      }
      summary["stabilized"] = stabilized;
      summary["g_samples"] = g_samples;
      if (check && expect.contains("min_stabilized"))
        chk.passed = stabilized >= expect["min_stabilized"].get<int>();
    } else {
      auto kr = cfg.at("k_range").get<std::vector<int>>();
      if (kr.size() != 2) throw InvalidSpec("k_range must be [k_lo, k_hi]");
      auto records = uniform_experiment(form, xi, psi, nu, ps, group, kr[0], kr[1],
                                        g_samples, seed, budget);
      bool all_from = true;
      int from_k = check && expect.contains("nonempty_from_k")
                       ? expect["nonempty_from_k"].get<int>()
                       : kr[0];
      for (const auto& r : records) {
        csv << r.g_id << "," << r.seed << "," << fmt(std::pow(2.0, r.k)) << ","
            << (r.nonempty ? 1 : 0) << ",,\n";
        if (r.k >= from_k && !r.nonempty) all_from = false;
      }
      summary["records"] = records.size();
      if (check && expect.contains("nonempty_from_k")) chk.passed = all_from;
    }
    res.csv = csv.str();
  } else {
    throw InvalidSpec("unknown experiment: " + exp);
  }

  json out;
  out["config"] = cfg;
  out["results"] = summary;
  if (check) out["check"] = {{"passed", chk.passed}, {"detail", chk.detail}};
  res.summary_json = out.dump(2);
}

} // namespace

Form parse_form(const json& j, int n) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "vector") {
    std::vector<FormComponent> comps;
    for (const auto& c : j.at("components")) comps.push_back(parse_component(c, n));
    return Form(n, std::move(comps));
  }
  return Form::scalar(n, parse_component(j, n));
}

Psi parse_psi(const json& j) {
  std::vector<PsiComponent> comps;
  if (j.is_array())
    for (const auto& c : j) comps.push_back(parse_psi_component(c));
  else
    comps.push_back(parse_psi_component(j));
  return Psi(std::move(comps));
}

Norm parse_norm(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "euclidean") return Norm::euclidean();
    if (s == "sup") return Norm::sup();
    if (s == "l1") return Norm::l1();
    throw InvalidSpec("unknown norm: " + s);
  }
  if (j.contains("lp")) return Norm::lp(j.at("lp").get<double>());
  if (j.contains("weighted")) {
    Eigen::VectorXd w = parse_vec(j.at("weighted"));
    Norm base = parse_norm(j.value("base", json("sup")));
    return Norm::weighted(std::move(w), base.kind);
  }
  throw InvalidSpec("unrecognized norm spec");
}

PointSet parse_points(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "nonzero") return PointSet::nonzero();
    if (s == "primitive") return PointSet::primitive();
    if (s == "all") return PointSet::all();
    throw InvalidSpec("unknown point set: " + s);
  }
  if (j.contains("primitive_congruence"))
    return PointSet::primitive_congruence(j.at("primitive_congruence").get<long>());
  throw InvalidSpec("unrecognized point-set spec");
}

GroupKind parse_group(const json& j) {
  std::string s = j.get<std::string>();
  if (s == "sl") return GroupKind::SLn;
  if (s == "asl") return GroupKind::ASLn;
  if (s == "torus") return GroupKind::Torus;
  throw InvalidSpec("unknown group: " + s);
}

CriterionFamily parse_family(const json& j, const Form& form) {
  if (!j.contains("family")) return default_family(form);
  std::string s = j.at("family").get<std::string>();
  if (s == "regular") return CriterionFamily::RegularZeroSet;
  if (s == "product") return CriterionFamily::Product;
  if (s == "max") return CriterionFamily::Max;
  throw InvalidSpec("unknown criterion family: " + s);
}

RunResult run_experiment(const std::string& config_text,
                         std::optional<std::uint64_t> seed_override, bool check) {
  RunResult res;
  CheckOutcome chk;
  json cfg;
  try {
    cfg = json::parse(config_text);
    if (!cfg.is_object()) throw InvalidSpec("config must be a JSON object");
    if (seed_override) cfg["seed"] = *seed_override;
    dispatch(cfg, check, res, chk);
  } catch (const BudgetExceeded& e) {
    res.exit_code = 3;
    res.summary_json = json{{"error", e.what()}}.dump(2);
    return res;
  } catch (const std::exception& e) {
    res.exit_code = 2;
    res.summary_json = json{{"error", e.what()}}.dump(2);
    return res;
  }
  res.exit_code = (chk.requested && !chk.passed) ? 4 : 0;
  return res;
}

} // namespace diolab
