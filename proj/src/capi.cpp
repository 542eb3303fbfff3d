#include "diolab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "diolab/config.hpp"
#include "diolab/errors.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

int code_for(const std::exception& e) {
  g_last_error = e.what();
  if (dynamic_cast<const diolab::BudgetExceeded*>(&e)) return DL_ERR_BUDGET;
  if (dynamic_cast<const std::invalid_argument*>(&e) ||
      dynamic_cast<const std::domain_error*>(&e))
    return DL_ERR_INVALID;
  return DL_ERR_RUNTIME;
}

diolab::PointSet make_point_set(const char* point_set, long q) {
  std::string s = point_set ? point_set : "";
  if (s == "nonzero") return diolab::PointSet::nonzero();
  if (s == "primitive") return diolab::PointSet::primitive();
  if (s == "primitive_congruence") return diolab::PointSet::primitive_congruence(q);
  if (s == "all") return diolab::PointSet::all();
  throw diolab::InvalidSpec("unknown point set: " + s);
}

struct EnumerationStopped {};

} // namespace

extern "C" {

const char* dl_last_error(void) { return g_last_error.c_str(); }

void dl_free(char* p) { std::free(p); }

int dl_run_json(const char* config_json, uint64_t seed_override, int has_seed,
                int check, char** summary_json, char** csv, char** plot_csv) {
  g_last_error.clear();
  if (!config_json) {
    g_last_error = "null config";
    return DL_ERR_INVALID;
  }
  std::optional<std::uint64_t> seed;
  if (has_seed) seed = seed_override;
  diolab::RunResult r = diolab::run_experiment(config_json, seed, check != 0);
  if (summary_json) *summary_json = dup_string(r.summary_json);
  if (csv) *csv = dup_string(r.csv);
  if (plot_csv) *plot_csv = dup_string(r.plot_csv);
  if (r.exit_code != 0 && r.exit_code != 4) g_last_error = r.summary_json;
  if (r.exit_code == 4) g_last_error = "check failed";
  return r.exit_code;
}

int dl_zeta(double s, double* out) {
  g_last_error.clear();
  try {
    *out = diolab::zeta(s);
    return DL_OK;
  } catch (const std::exception& e) {
    return code_for(e);
  }
}

int dl_zeta_q(double s, long q, double* out) {
  g_last_error.clear();
  try {
    *out = diolab::zeta_q(s, q);
    return DL_OK;
  } catch (const std::exception& e) {
    return code_for(e);
  }
}

int dl_siegel_constant(const char* point_set, long q, int n, const char* group,
                       double* out) {
  g_last_error.clear();
  try {
    diolab::GroupKind gk = diolab::parse_group(nlohmann::json(group ? group : ""));
    *out = diolab::siegel_constant(make_point_set(point_set, q), n, gk);
    return DL_OK;
  } catch (const std::exception& e) {
    return code_for(e);
  }
}

int dl_volume_product_const(int n, double c, double S, double T, double* out) {
  g_last_error.clear();
  try {
    *out = diolab::volume_product_closed_form(n, diolab::Psi::constant(c), S, T);
    return DL_OK;
  } catch (const std::exception& e) {
    return code_for(e);
  }
}

int dl_volume_max_const(int n, int p, const double* z, double c, double S,
                        double T, double* out) {
  g_last_error.clear();
  try {
    std::vector<double> zv(z, z + p);
    *out = diolab::volume_max_closed_form(n, p, zv, diolab::Psi::constant(c), S, T);
    return DL_OK;
  } catch (const std::exception& e) {
    return code_for(e);
  }
}

int dl_enumerate(const char* point_set, long q, const char* norm, double S,
                 double T, int n, dl_point_cb cb, void* user) {
  g_last_error.clear();
  if (!cb) {
    g_last_error = "null callback";
    return DL_ERR_INVALID;
  }
  try {
    diolab::Norm nu = diolab::parse_norm(nlohmann::json(norm ? norm : ""));
    diolab::PointSet ps = make_point_set(point_set, q);
    try {
      diolab::enumerate_annulus(ps, nu, S, T, n, [&](const Eigen::VectorXi& v) {
        if (!cb(v.data(), n, user)) throw EnumerationStopped{};
      });
    } catch (const EnumerationStopped&) {
    }
    return DL_OK;
  } catch (const std::exception& e) {
    return code_for(e);
  }
}

} // extern "C"
