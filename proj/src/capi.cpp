#include "ahscat.h"

#include <cstring>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ahscat/asymptotics.hpp"
#include "ahscat/blackhole.hpp"
#include "ahscat/cam.hpp"
#include "ahscat/error.hpp"
#include "ahscat/inverse.hpp"
#include "ahscat/jost.hpp"
#include "ahscat/liouville.hpp"
#include "ahscat/profile.hpp"
#include "ahscat/scattering.hpp"
#include "json.hpp"

using nlohmann::json;

// profile handle bundling the potential with its lazily built Liouville map
struct ahs_profile {
  ahscat::PotentialProfile p;
  mutable std::optional<ahscat::LiouvilleMap> map;
  mutable std::mutex map_mutex;

  const ahscat::LiouvilleMap& liouville() const {
    std::lock_guard<std::mutex> lock(map_mutex);
    if (!map) map = ahscat::build_liouville(p, 1e-12);
    return *map;
  }
};

namespace {

thread_local std::string g_last_error;

ahs_status status_of(const ahscat::Error& e) {
  g_last_error = e.what();
  switch (e.kind()) {
    case ahscat::ErrorKind::invalid_argument:
      return AHS_ERR_INVALID;
    case ahscat::ErrorKind::domain:
      return AHS_ERR_DOMAIN;
    case ahscat::ErrorKind::io:
      return AHS_ERR_IO;
    case ahscat::ErrorKind::numeric:
    case ahscat::ErrorKind::internal:
      return AHS_ERR_NUMERIC;
  }
  return AHS_ERR_NUMERIC;
}

template <typename Fn>
ahs_status guarded(Fn&& fn) {
  try {
    fn();
    return AHS_OK;
  } catch (const ahscat::Error& e) {
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return AHS_ERR_NUMERIC;
  } catch (...) {
    g_last_error = "unknown failure";
    return AHS_ERR_NUMERIC;
  }
}

ahs_status require(bool ok, const char* msg) {
  if (ok) return AHS_OK;
  g_last_error = msg;
  return AHS_ERR_INVALID;
}

void write_matrix(const ahscat::Mat2c& m, double out[8]) {
  const auto f = m.flat();
  for (int i = 0; i < 4; ++i) {
    out[2 * i] = f[i].real();
    out[2 * i + 1] = f[i].imag();
  }
}

ahs_status make_profile(ahs_profile** out, ahscat::PotentialProfile p) {
  *out = new ahs_profile{std::move(p), std::nullopt, {}};
  return AHS_OK;
}

char* dup_string(const std::string& s) {
  char* buf = new char[s.size() + 1];
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return buf;
}

}  // namespace

extern "C" {

const char* ahs_version(void) { return "0.1.0"; }

const char* ahs_last_error(void) { return g_last_error.c_str(); }

void ahs_string_free(char* s) { delete[] s; }

ahs_status ahs_profile_sech(ahs_profile** out) {
  if (auto st = require(out != nullptr, "null output handle")) return st;
  return guarded([&] { make_profile(out, ahscat::make_sech_profile()); });
}

ahs_status ahs_profile_scaled_sech(double amplitude, double rate,
                                   ahs_profile** out) {
  if (auto st = require(out != nullptr, "null output handle")) return st;
  return guarded(
      [&] { make_profile(out, ahscat::make_scaled_sech_profile(amplitude, rate)); });
}

ahs_status ahs_profile_bumped_sech(double center, double width, double height,
                                   ahs_profile** out) {
  if (auto st = require(out != nullptr, "null output handle")) return st;
  return guarded([&] {
    make_profile(out, ahscat::make_bumped_sech_profile(center, width, height));
  });
}

ahs_status ahs_profile_tabulated(const double* x, const double* a, size_t count,
                                 ahs_profile** out) {
  if (auto st = require(out && x && a, "null argument")) return st;
  return guarded([&] {
    make_profile(out, ahscat::make_tabulated_profile(
                          std::vector<double>(x, x + count),
                          std::vector<double>(a, a + count)));
  });
}

ahs_status ahs_profile_load_table(const char* path, ahs_profile** out) {
  if (auto st = require(out && path, "null argument")) return st;
  return guarded([&] { make_profile(out, ahscat::load_tabulated_profile(path)); });
}

ahs_status ahs_profile_blackhole(double M, double Q, double Lambda,
                                 ahs_profile** out) {
  if (auto st = require(out != nullptr, "null output handle")) return st;
  return guarded([&] { make_profile(out, ahscat::bh_profile({M, Q, Lambda})); });
}

ahs_status ahs_profile_translate(const ahs_profile* p, double c,
                                 ahs_profile** out) {
  if (auto st = require(p && out, "null argument")) return st;
  return guarded([&] { make_profile(out, ahscat::translate_profile(p->p, c)); });
}

ahs_status ahs_profile_reflect(const ahs_profile* p, ahs_profile** out) {
  if (auto st = require(p && out, "null argument")) return st;
  return guarded([&] { make_profile(out, ahscat::reflect_profile(p->p)); });
}

void ahs_profile_free(ahs_profile* p) { delete p; }

ahs_status ahs_profile_eval(const ahs_profile* p, double x, double* a,
                            double* a_prime) {
  if (auto st = require(p && a, "null argument")) return st;
  return guarded([&] {
    *a = p->p(x);
    if (a_prime) *a_prime = p->p.derivative(x);
  });
}

ahs_status ahs_profile_constants(const ahs_profile* p, double constants[6]) {
  if (auto st = require(p && constants, "null argument")) return st;
  return guarded([&] {
    constants[0] = p->p.a_minus();
    constants[1] = p->p.kappa_minus();
    constants[2] = p->p.a_plus();
    constants[3] = p->p.kappa_plus();
    constants[4] = p->p.cutoff();
    constants[5] = p->liouville().total_width();
  });
}

ahs_status ahs_profile_fit_tails(const ahs_profile* p, double lo, double hi,
                                 double fit[6]) {
  if (auto st = require(p && fit, "null argument")) return st;
  return guarded([&] {
    const auto t = ahscat::fit_asymptotic_constants(p->p, lo, hi);
    fit[0] = t.a_minus;
    fit[1] = t.kappa_minus;
    fit[2] = t.a_plus;
    fit[3] = t.kappa_plus;
    fit[4] = t.residual_minus;
    fit[5] = t.residual_plus;
  });
}

ahs_status ahs_profile_forward(const ahs_profile* p, double x, double* X) {
  if (auto st = require(p && X, "null argument")) return st;
  return guarded([&] { *X = p->liouville().forward(x); });
}

ahs_status ahs_profile_inverse(const ahs_profile* p, double X, double* x) {
  if (auto st = require(p && x, "null argument")) return st;
  return guarded([&] { *x = p->liouville().inverse(X); });
}

ahs_status ahs_sturm_liouville_q(const ahs_profile* p, double lambda, double X,
                                 double* re, double* im) {
  if (auto st = require(p && re && im, "null argument")) return st;
  return guarded([&] {
    const auto q = ahscat::sturm_liouville_potential(p->liouville(), p->p, lambda, X);
    *re = q.real();
    *im = q.imag();
  });
}

ahs_status ahs_bh_horizons(double M, double Q, double Lambda, double radii[4],
                           double kappas[4]) {
  if (auto st = require(radii && kappas, "null argument")) return st;
  return guarded([&] {
    const auto h = ahscat::find_horizons({M, Q, Lambda});
    radii[0] = h.r_n;
    radii[1] = h.r_c;
    radii[2] = h.r_minus;
    radii[3] = h.r_plus;
    kappas[0] = h.kappa_n;
    kappas[1] = h.kappa_c;
    kappas[2] = h.kappa_minus;
    kappas[3] = h.kappa_plus;
  });
}

ahs_status ahs_bh_regge_wheeler(double M, double Q, double Lambda, double r,
                                double c, double* x) {
  if (auto st = require(x != nullptr, "null argument")) return st;
  return guarded([&] {
    const auto h = ahscat::find_horizons({M, Q, Lambda});
    *x = ahscat::regge_wheeler(h, r, c);
  });
}

ahs_status ahs_bh_exterior_width(double M, double Q, double Lambda, double* A) {
  if (auto st = require(A != nullptr, "null argument")) return st;
  return guarded([&] {
    *A = ahscat::exterior_width(ahscat::find_horizons({M, Q, Lambda}));
  });
}

ahs_status ahs_bh_recover(double A, double kappa_minus, double kappa_plus,
                          double a_minus, double a_plus, double* M, double* Q2,
                          double* Lambda, double* residual, int* consistent) {
  if (auto st = require(M && Q2 && Lambda && residual, "null argument")) return st;
  return guarded([&] {
    const auto r =
        ahscat::recover_parameters(A, kappa_minus, kappa_plus, a_minus, a_plus);
    *M = r.params.M;
    *Q2 = r.params.Q * r.params.Q;
    *Lambda = r.params.Lambda;
    *residual = r.residual;
    if (consistent) *consistent = r.consistent ? 1 : 0;
  });
}

ahs_status ahs_jost(const ahs_profile* p, int side, double lambda, double z_re,
                    double z_im, double x, double entries[8], double* log_scale,
                    double* tail_error) {
  if (auto st = require(p && entries && log_scale, "null argument")) return st;
  if (auto st = require(side == 0 || side == 1, "side must be 0 or 1")) return st;
  return guarded([&] {
    const ahscat::SpectralPoint pt{lambda, {z_re, z_im}};
    const auto jm = side == 0 ? ahscat::jost_left(p->p, pt, x)
                              : ahscat::jost_right(p->p, pt, x);
    write_matrix(jm.m, entries);
    *log_scale = jm.log_scale;
    if (tail_error) *tail_error = jm.tail_error;
  });
}

ahs_status ahs_jost_series(const ahs_profile* p, int side, double lambda,
                           double z_re, double z_im, double x, int max_terms,
                           double tol, double entries[8]) {
  if (auto st = require(p && entries, "null argument")) return st;
  if (auto st = require(side == 0 || side == 1, "side must be 0 or 1")) return st;
  return guarded([&] {
    const ahscat::SpectralPoint pt{lambda, {z_re, z_im}};
    const auto jm = ahscat::volterra_oracle(
        p->p, pt, x, max_terms, tol,
        side == 0 ? ahscat::Side::left : ahscat::Side::right);
    write_matrix(jm.m, entries);
  });
}

ahs_status ahs_transfer_matrix(const ahs_profile* p, double lambda, double z_re,
                               double z_im, double entries[8],
                               double* log_scale) {
  if (auto st = require(p && entries && log_scale, "null argument")) return st;
  return guarded([&] {
    const auto tm =
        ahscat::transfer_matrix(p->p, p->liouville(), {lambda, {z_re, z_im}});
    const ahscat::Mat2c m{tm.a1, tm.a2, tm.a3, tm.a4};
    write_matrix(m, entries);
    *log_scale = tm.log_scale;
  });
}

ahs_status ahs_s_matrix(const ahs_profile* p, double lambda, int n,
                        double tlr[6], double* unitarity_residual) {
  if (auto st = require(p && tlr, "null argument")) return st;
  if (auto st = require(n >= 0, "angular momentum must be >= 0")) return st;
  return guarded([&] {
    const auto e = ahscat::scattering_entry(p->p, p->liouville(), lambda,
                                            static_cast<double>(n));
    tlr[0] = e.T.real();
    tlr[1] = e.T.imag();
    tlr[2] = e.L.real();
    tlr[3] = e.L.imag();
    tlr[4] = e.R.real();
    tlr[5] = e.R.imag();
    if (unitarity_residual) *unitarity_residual = e.unitarity_residual;
  });
}

ahs_status ahs_star_reflection_residual(const ahs_profile* p, double lambda,
                                        int n, double* residual) {
  if (auto st = require(p && residual, "null argument")) return st;
  return guarded(
      [&] { *residual = ahscat::star_reflection_check(p->p, lambda, n); });
}

ahs_status ahs_find_zeros(const ahs_profile* p, double lambda, double re_lo,
                          double im_lo, double re_hi, double im_hi,
                          size_t capacity, double* zeros, double* residuals,
                          size_t* count, long* winding) {
  if (auto st = require(p && zeros && count && winding, "null argument"))
    return st;
  return guarded([&] {
    const auto set = ahscat::find_zeros_a3(p->p, p->liouville(), lambda,
                                           {re_lo, im_lo, re_hi, im_hi});
    if (set.zeros.size() > capacity)
      ahscat::fail(ahscat::ErrorKind::invalid_argument,
                   "zero buffer too small for " +
                       std::to_string(set.zeros.size()) + " zeros");
    for (std::size_t i = 0; i < set.zeros.size(); ++i) {
      zeros[2 * i] = set.zeros[i].z.real();
      zeros[2 * i + 1] = set.zeros[i].z.imag();
      if (residuals) residuals[i] = set.zeros[i].residual;
    }
    *count = set.zeros.size();
    *winding = set.winding;
  });
}

ahs_status ahs_zero_lattice_fit(const double* zeros, size_t count, double A,
                                double kappa_minus, double kappa_plus,
                                double lambda, double fit[4]) {
  if (auto st = require(zeros && fit, "null argument")) return st;
  return guarded([&] {
    std::vector<ahscat::Zero> zs(count);
    for (std::size_t i = 0; i < count; ++i)
      zs[i].z = {zeros[2 * i], zeros[2 * i + 1]};
    const auto f =
        ahscat::zero_lattice_fit(zs, A, kappa_minus, kappa_plus, lambda);
    fit[0] = f.slope;
    fit[1] = f.p_estimate;
    fit[2] = f.spacing_residual;
    fit[3] = f.realpart_residual;
  });
}

ahs_status ahs_complex_gamma(double re, double im, double* out_re,
                             double* out_im) {
  if (auto st = require(out_re && out_im, "null argument")) return st;
  return guarded([&] {
    const auto g = ahscat::complex_gamma({re, im});
    *out_re = g.real();
    *out_im = g.imag();
  });
}

ahs_status ahs_predicted(const ahs_profile* p, int which, double lambda,
                         double z_re, double z_im, double* out_re,
                         double* out_im) {
  if (auto st = require(p && out_re && out_im, "null argument")) return st;
  if (auto st = require(which >= 0 && which <= 3, "which must be 0..3")) return st;
  return guarded([&] {
    const auto c =
        ahscat::AsymptoticConstants::from_profile(p->p, p->liouville(), lambda);
    const ahscat::cplx z{z_re, z_im};
    ahscat::cplx v;
    switch (which) {
      case 0: v = ahscat::predicted_T(c, z); break;
      case 1: v = ahscat::predicted_L(c, z); break;
      case 2: v = ahscat::predicted_aL1(c, z); break;
      default: v = ahscat::predicted_aL3(c, z); break;
    }
    *out_re = v.real();
    *out_im = v.imag();
  });
}

ahs_status ahs_fit_exponential_decay(const int* n, const double* value,
                                     size_t count, int window_lo, int window_hi,
                                     double* rate, double* intercept,
                                     double* rms) {
  if (auto st = require(n && value && rate, "null argument")) return st;
  return guarded([&] {
    std::vector<ahscat::DecaySample> samples(count);
    for (std::size_t i = 0; i < count; ++i) samples[i] = {n[i], value[i]};
    const auto fit =
        ahscat::fit_exponential_decay(samples, window_lo, window_hi);
    *rate = fit.rate;
    if (intercept) *intercept = fit.intercept;
    if (rms) *rms = fit.rms_residual;
  });
}

ahs_status ahs_recover_kappa_minus(const ahs_profile* p, double lambda, int n_lo,
                                   int n_hi, double* kappa) {
  if (auto st = require(p && kappa, "null argument")) return st;
  if (auto st = require(n_hi > n_lo && n_lo >= 1, "bad momentum window"))
    return st;
  return guarded([&] {
    std::vector<ahscat::ScatteringEntry> entries;
    for (int n = n_lo; n <= n_hi; ++n)
      entries.push_back(ahscat::scattering_entry(p->p, p->liouville(), lambda,
                                                 static_cast<double>(n)));
    *kappa = ahscat::recover_kappa_minus(entries);
  });
}

ahs_status ahs_uniqueness_experiment(const ahs_profile* pa, const ahs_profile* pb,
                                     double lambda, int n_max, int side,
                                     char** json_report) {
  if (auto st = require(pa && pb && json_report, "null argument")) return st;
  if (auto st = require(side == 0 || side == 1, "side must be 0 or 1")) return st;
  return guarded([&] {
    const auto rep = ahscat::uniqueness_experiment(
        pa->p, pb->p, lambda, n_max,
        side == 0 ? ahscat::Side::left : ahscat::Side::right);
    json j;
    j["side"] = side == 0 ? "left" : "right";
    j["lambda"] = rep.lambda;
    j["n_max"] = rep.n_max;
    j["n"] = rep.ns;
    j["diff"] = rep.diffs;
    j["identical"] = rep.identical;
    j["fitted_rate"] = rep.fitted_rate;
    j["implied_B"] = rep.implied_B;
    j["implied_cutoff_x"] = rep.implied_cutoff_x;
    j["true_divergence_x"] = rep.true_divergence_x;
    j["window"] = {rep.window_lo, rep.window_hi};
    j["verdict"] = rep.consistent ? "consistent" : "violated";
    *json_report = dup_string(j.dump(2));
  });
}

ahs_status ahs_transmission_experiment(const ahs_profile* pa,
                                       const ahs_profile* pb, double lambda,
                                       int n_max, char** json_report) {
  if (auto st = require(pa && pb && json_report, "null argument")) return st;
  return guarded([&] {
    const auto rep =
        ahscat::transmission_experiment(pa->p, pb->p, lambda, n_max);
    json j;
    j["lambda"] = rep.lambda;
    j["n_max"] = rep.n_max;
    j["curvature_ok"] = {rep.curvature_ok_a, rep.curvature_ok_b};
    j["width_a"] = rep.width_a;
    j["width_b"] = rep.width_b;
    j["t_identical"] = rep.t_identical;
    j["diff_rate"] = rep.diff_rate;
    j["t_hypothesis_met"] = rep.t_hypothesis_met;
    j["l_agreement"] = rep.l_agreement;
    j["sigma_phase"] = rep.sigma_phase;
    j["sigma_xcorr"] = rep.sigma_xcorr;
    j["translation_recovered"] = rep.translation_recovered;
    j["verdict"] = rep.verdict;
    j["n"] = rep.ns;
    j["t_diff"] = rep.t_diffs;
    j["l_diff"] = rep.l_diffs;
    *json_report = dup_string(j.dump(2));
  });
}

ahs_status ahs_hardy_trials(double B, double b_max, int trials, unsigned seed,
                            char** json_report) {
  if (auto st = require(json_report != nullptr, "null argument")) return st;
  return guarded([&] {
    const int ns[] = {1, 2, 4, 8};
    const double zs[] = {1.0, 5.0, 10.0};
    const auto rep = ahscat::hardy_randomized_trials(B, b_max, trials, seed, ns, zs);
    json j;
    j["B"] = rep.B;
    j["trials"] = trials;
    j["violations"] = rep.violations;
    j["worst_margin"] = rep.worst_margin;
    json samples = json::array();
    for (const auto& s : rep.samples)
      samples.push_back({{"z", s.z},
                         {"magnitude", s.transform_magnitude},
                         {"bound", s.bound},
                         {"margin", s.margin}});
    j["samples"] = samples;
    *json_report = dup_string(j.dump(2));
  });
}

}  // extern "C"
