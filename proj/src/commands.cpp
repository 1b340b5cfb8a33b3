#include "nssbell/commands.hpp"

#include "nssbell/twirl.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

namespace nssbell {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + num(v[i]);
  return s;
}

void write_metadata(std::ostream& os, const char* command, const RunConfig& c,
                    const std::string& params) {
  os << "# tool=" << kToolVersion << '\n'
     << "# command=" << command << '\n'
     << "# seed=" << c.seed << '\n'
     << "# workers=" << c.workers << '\n'
     << "# config=" << params << '\n';
}

double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

void with_output(const RunConfig& config,
                 const std::function<void(const RunConfig&, std::ostream&)>& write) {
  if (config.out.empty() || config.out == "-") {
    write(config, std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(config.out, std::ios::binary | std::ios::trunc);
  if (!file) throw OutputError("cannot open output file '" + config.out + "'");
  write(config, file);
  file.flush();
  if (!file) throw OutputError("failed writing output file '" + config.out + "'");
}

}  // namespace

std::string to_string(Channel channel) {
  switch (channel) {
    case Channel::none: return "none";
    case Channel::independent: return "independent";
    case Channel::shared: return "shared";
  }
  return "?";
}

Channel parse_channel(const std::string& text) {
  if (text == "none") return Channel::none;
  if (text == "independent") return Channel::independent;
  if (text == "shared") return Channel::shared;
  throw std::invalid_argument("unknown channel '" + text + "'");
}

// ---------------------------------------------------------------------------

void write_chsh_scan(const RunConfig& c, std::ostream& os) {
  if (c.phi_steps < 2) throw std::invalid_argument("chsh-scan: phi_steps must be >= 2");
  write_metadata(os, "chsh-scan", c,
                 "phi_steps=" + std::to_string(c.phi_steps) +
                     " trials=" + std::to_string(c.trials) +
                     " channel=" + to_string(c.channel));
  os << "phi,s_formula,s_physical_exact,s_physical_twirled,s_logical_twirled,"
        "s_logical_mc,mc_stderr,reject_rate\n";

  // The exact columns use independent per-party twirls; --channel only
  // selects the noise of the Monte Carlo column.
  const Matrix phys = singlet_physical().projector();
  const Matrix phys_twirled =
      twirl_exact(phys, TwirlSpec::exact(1, BlockMode::independent_blocks));
  const Matrix logical_twirled = twirl_exact(
      singlet_logical().projector(), TwirlSpec::exact(3, BlockMode::independent_blocks));

  const double step = 0.5 * std::numbers::pi / (c.phi_steps - 1);
  for (int i = 0; i < c.phi_steps; ++i) {
    const double phi = i * step;
    const auto s_phys = chsh_exact(phys, ChshSettings::make(phi, Flavor::physical_2qubit));
    const auto s_phys_tw =
        chsh_exact(phys_twirled, ChshSettings::make(phi, Flavor::physical_2qubit));
    const auto s_log_tw =
        chsh_exact(logical_twirled, ChshSettings::make(phi, Flavor::logical_6photon));
    const auto mc = chsh_monte_carlo(Flavor::logical_6photon, phi, c.trials, c.channel,
                                     derive_seed(c.seed, static_cast<std::uint64_t>(i)),
                                     c.workers);
    auto val = [](const std::optional<ChshResult>& r) {
      return r ? num(r->s_value) : std::string("nan");
    };
    os << num(phi) << ',' << num(chsh_formula(phi)) << ',' << val(s_phys) << ','
       << val(s_phys_tw) << ',' << val(s_log_tw) << ',' << val(mc) << ','
       << (mc ? num(mc->s_stderr) : "nan") << ',' << (mc ? num(mc->reject_rate) : "nan")
       << '\n';
  }
}

std::vector<ConvergenceRow> twirl_convergence(const std::vector<std::size_t>& sample_counts,
                                              int repeats, std::uint64_t seed,
                                              int workers) {
  if (repeats < 1) throw std::invalid_argument("twirl-converge: repeats must be >= 1");
  std::vector<Matrix> inputs, exact;
  for (int r = 0; r < repeats; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    std::normal_distribution<double> normal;
    Vector v(8);
    for (auto& a : v) a = Complex(normal(rng), normal(rng));
    v.normalize();
    inputs.push_back(v * v.adjoint());
    exact.push_back(twirl_exact(inputs.back(), TwirlSpec::exact(3)));
  }

  std::vector<ConvergenceRow> rows;
  {
    std::vector<double> d;
    for (int r = 0; r < repeats; ++r) d.push_back(trace_distance(exact[r], exact[r]));
    rows.push_back({0, percentile(d, 0.5), percentile(d, 0.05), percentile(d, 0.95)});
  }
  for (std::size_t m : sample_counts) {
    std::vector<double> d;
    for (int r = 0; r < repeats; ++r) {
      const std::uint64_t s =
          derive_seed(derive_seed(seed, static_cast<std::uint64_t>(r)), m);
      const Matrix mc =
          twirl_mc(inputs[r], TwirlSpec::monte_carlo(3, m, BlockMode::single_block, workers), s);
      d.push_back(trace_distance(mc, exact[r]));
    }
    rows.push_back({m, percentile(d, 0.5), percentile(d, 0.05), percentile(d, 0.95)});
  }
  return rows;
}

void write_twirl_converge(const RunConfig& c, std::ostream& os) {
  write_metadata(os, "twirl-converge", c,
                 "samples=" + join_sizes(c.sample_counts) +
                     " repeats=" + std::to_string(c.repeats) +
                     " input=random_pure_3qubit control=samples_0_is_exact_vs_exact");
  os << "samples,median_trace_distance,p05,p95\n";
  for (const auto& row : twirl_convergence(c.sample_counts, c.repeats, c.seed, c.workers)) {
    os << row.samples << ',' << num(row.median) << ',' << num(row.p05) << ','
       << num(row.p95) << '\n';
  }
}

void write_orthogonality(const RunConfig& c, std::ostream& os) {
  write_metadata(os, "orthogonality", c, "samples=" + std::to_string(c.samples));
  os << "j,jp,m,n,mp,np,samples,mean_re,mean_im,stderr_re,stderr_im,expected,"
        "within_4sigma\n";
  const auto tuples = standard_orthogonality_tuples();
  Rng rng(worker_seed(c.seed, 0));
  const auto est = check_orthogonality_batch(tuples, c.samples, rng);
  for (std::size_t k = 0; k < tuples.size(); ++k) {
    const auto& t = tuples[k];
    const auto& e = est[k];
    os << num(t.j.value()) << ',' << num(t.jp.value()) << ',' << num(0.5 * t.m) << ','
       << num(0.5 * t.n) << ',' << num(0.5 * t.mp) << ',' << num(0.5 * t.np) << ','
       << e.samples << ',' << num(e.mean.real()) << ',' << num(e.mean.imag()) << ','
       << num(e.stderr_real) << ',' << num(e.stderr_imag) << ',' << num(t.expected())
       << ',' << (e.within(t.expected(), 4.0) ? 1 : 0) << '\n';
  }
}

void write_biref(const RunConfig& c, std::ostream& os) {
  if (c.mu_steps < 1) throw std::invalid_argument("biref: mu_steps must be >= 1");
  BirefringenceParams p = c.biref;
  p.mu = 1.0;
  p.validate();
  if (!(c.mu_min > 0.0 && c.mu_min <= 1.0)) {
    throw std::invalid_argument("biref: mu_min must lie in (0, 1]");
  }
  write_metadata(os, "biref", c,
                 "k2=" + num(p.k2) + " m_tilde=" + num(p.m_tilde) +
                     " lambda=" + num(p.lambda) + " R=" + num(p.radius) +
                     " mu_min=" + num(c.mu_min) + " mu_steps=" + std::to_string(c.mu_steps));
  os << "k2,m_tilde,lambda,R,mu,delta_phi\n";
  for (int i = 0; i < c.mu_steps; ++i) {
    p.mu = c.mu_steps == 1 ? 1.0
                           : c.mu_min + (1.0 - c.mu_min) * i / (c.mu_steps - 1);
    if (i == c.mu_steps - 1) p.mu = 1.0;
    os << num(p.k2) << ',' << num(p.m_tilde) << ',' << num(p.lambda) << ','
       << num(p.radius) << ',' << num(p.mu) << ',' << num(birefringence_phase(p)) << '\n';
  }
}

void write_tetrad_check(const RunConfig& c, std::ostream& os) {
  MetricField metric;
  TetradField tetrad;
  if (c.metric == "minkowski") {
    metric = minkowski_metric();
    tetrad = identity_tetrad();
  } else if (c.metric == "schwarzschild") {
    auto f = schwarzschild_static_tetrad(c.mass);
    metric = std::move(f.metric);
    tetrad = std::move(f.tetrad);
  } else {
    throw std::invalid_argument("tetrad-check: unknown metric '" + c.metric + "'");
  }
  write_metadata(os, "tetrad-check", c,
                 "metric=" + c.metric + " mass=" + num(c.mass) + " radii_over_M=" +
                     join_doubles(c.radii) + " theta=" + num(c.theta) +
                     " tol=" + num(c.tolerance));
  os << "metric,mass,t,r,theta,phi,orthonormality,coordinate_completeness,"
        "frame_completeness,pass\n";
  for (double rr : c.radii) {
    const SpacetimePoint x{0.0, rr * c.mass, c.theta, 0.0};
    const TetradResiduals res = verify_tetrad(metric, tetrad, x, c.tolerance);
    os << c.metric << ',' << num(c.mass) << ',' << num(x[0]) << ',' << num(x[1]) << ','
       << num(x[2]) << ',' << num(x[3]) << ',' << num(res.orthonormality) << ','
       << num(res.coordinate_completeness) << ',' << num(res.frame_completeness) << ','
       << (res.passed ? "pass" : "fail") << '\n';
  }
}

void cmd_chsh_scan(const RunConfig& c) { with_output(c, write_chsh_scan); }
void cmd_twirl_converge(const RunConfig& c) { with_output(c, write_twirl_converge); }
void cmd_orthogonality(const RunConfig& c) { with_output(c, write_orthogonality); }
void cmd_biref(const RunConfig& c) { with_output(c, write_biref); }
void cmd_tetrad_check(const RunConfig& c) { with_output(c, write_tetrad_check); }

}  // namespace nssbell
