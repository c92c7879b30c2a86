#include "opflab/char_cache.hpp"
#include "opflab/rep.hpp"
#include "opflab/tensor.hpp"
#include "opflab/toy.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::ordered_json;
using opflab::tensor::Mat;

struct Output {
  std::string path;    // empty = stdout
  std::string format;  // json | csv | text

  void emit(const std::string& content) const {
    if (path.empty()) {
      std::cout << content;
      if (!content.empty() && content.back() != '\n') std::cout << '\n';
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
  }
};

void add_output_flags(CLI::App* cmd, Output& out, const std::string& default_format) {
  out.format = default_format;
  cmd->add_option("--out", out.path, "write the artifact to this path instead of stdout");
  cmd->add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
}

std::string json_matrix(const opflab::tensor::Mat& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(ordered_json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(row);
  }
  return rows.dump();
}

int run_dim(int j, int d, const Output& out) {
  auto value = opflab::rep::dim_Dj(j, d);
  if (out.format == "json") {
    ordered_json doc;
    doc["j"] = j;
    doc["d"] = d;
    doc["dim"] = value.str();
    out.emit(doc.dump(2));
  } else {
    out.emit(value.str());
  }
  return 0;
}

int run_kron(const std::string& ls, const std::string& ms, const std::string& ns, const Output& out) {
  using opflab::rep::Partition;
  Partition lambda = Partition::parse(ls), mu = Partition::parse(ms), nu = Partition::parse(ns);
  auto g = opflab::rep::kronecker(lambda, mu, nu);
  if (out.format == "json") {
    ordered_json doc;
    doc["lambda"] = lambda.to_string();
    doc["mu"] = mu.to_string();
    doc["nu"] = nu.to_string();
    doc["kronecker"] = g.str();
    out.emit(doc.dump(2));
  } else {
    out.emit(g.str());
  }
  return 0;
}

int run_branch(const std::string& ls, int m, int n, const Output& out) {
  using opflab::rep::Partition;
  Partition lambda = Partition::parse(ls);
  auto terms = opflab::rep::branch_decompose(lambda, m, n);
  auto total = opflab::rep::su_dim(lambda, m * n);
  opflab::rep::Int check = 0;
  for (const auto& t : terms)
    check += t.multiplicity * opflab::rep::su_dim(t.mu, m) * opflab::rep::su_dim(t.nu, n);

  if (out.format == "csv") {
    std::ostringstream os;
    os << "mu,nu,multiplicity\n";
    for (const auto& t : terms)
      os << '"' << t.mu.to_string() << "\",\"" << t.nu.to_string() << "\"," << t.multiplicity.str()
         << '\n';
    out.emit(os.str());
  } else if (out.format == "text") {
    std::ostringstream os;
    for (const auto& t : terms)
      os << '(' << t.mu.to_string() << ") x (" << t.nu.to_string() << "): " << t.multiplicity.str()
         << '\n';
    os << "dimension check: " << check.str() << " = " << total.str() << '\n';
    out.emit(os.str());
  } else {
    ordered_json doc;
    doc["lambda"] = lambda.to_string();
    doc["m"] = m;
    doc["n"] = n;
    ordered_json list = ordered_json::array();
    for (const auto& t : terms) {
      ordered_json item;
      item["mu"] = t.mu.to_string();
      item["nu"] = t.nu.to_string();
      item["multiplicity"] = t.multiplicity.str();
      list.push_back(item);
    }
    doc["terms"] = list;
    doc["su_dim_lambda"] = total.str();
    doc["dimension_identity"] = (check == total);
    out.emit(doc.dump(2));
  }
  return (check == total) ? 0 : 1;
}

int run_certify(int j, int da, int db, bool direct, const Output& out) {
  auto cert = opflab::rep::certify_holistic(j, da, db, direct);
  ordered_json doc;
  doc["j"] = cert.j;
  doc["d_a"] = cert.d_a;
  doc["d_b"] = cert.d_b;
  doc["method"] = cert.method;
  doc["multiplicity"] = cert.multiplicity.str();
  doc["holistic"] = cert.holistic;
  if (!cert.inductive_chain.empty()) doc["inductive_chain"] = cert.inductive_chain;
  if (out.format == "text") {
    std::ostringstream os;
    os << "j=" << j << " d_a=" << da << " d_b=" << db << " method=" << cert.method
       << " multiplicity=" << cert.multiplicity.str() << ' '
       << (cert.holistic ? "holistic (violates local tomography)"
                         : "locally tomographic (quantum)");
    out.emit(os.str());
  } else {
    out.emit(doc.dump(2));
  }
  if (j >= 2 && !cert.holistic) return 1;  // a certificate that should be positive is zero
  return 0;
}

int run_kvalues(int d, const std::string& limit_str, const Output& out) {
  opflab::rep::Int limit(limit_str);
  auto values = opflab::rep::enumerate_K_values(d, limit);
  if (out.format == "json") {
    ordered_json doc;
    doc["d"] = d;
    doc["limit"] = limit.str();
    if (d >= 3) doc["experimental"] = true;
    ordered_json list = ordered_json::array();
    for (const auto& v : values) list.push_back(v.str());
    doc["k_values"] = list;
    out.emit(doc.dump(2));
  } else {
    std::ostringstream os;
    for (size_t i = 0; i < values.size(); ++i) {
      if (i) os << ',';
      os << values[i].str();
    }
    out.emit(os.str());
  }
  return 0;
}

int run_toy_verify(int da, int db, int trials, std::uint64_t seed, bool negative_control,
                   const Output& out) {
  opflab::toy::VerifyOptions options;
  options.corrupt_star = negative_control;
  auto report = opflab::toy::verify_constraints(da, db, trials, seed, options);
  if (out.format == "text") {
    std::ostringstream os;
    for (const auto& r : report.results)
      os << r.constraint << ": " << (r.pass ? "pass" : "FAIL")
         << " (max residual " << r.max_residual << ", trials " << r.trials << ")\n";
    out.emit(os.str());
  } else {
    out.emit(opflab::toy::report_to_json(report));
  }
  return report.all_pass() ? 0 : 1;
}

int run_toy_reduce(int da, int db, std::uint64_t seed, const Output& out) {
  using namespace opflab;
  toy::BipartiteVec psi(da, db, tensor::random_pure_state(da * db, seed));
  auto state = toy::reduced_state(psi);
  // cross-check against the projected form S(rho⊗rho)S + (1-tr) S/trS
  Mat second = toy::state_family_member(state.witness().front().second);
  double residual = (state.matrix() - second).norm();
  auto membership = toy::is_reduced_state(state, db);

  ordered_json doc;
  doc["d_a"] = da;
  doc["d_b"] = db;
  doc["seed"] = std::to_string(seed);
  doc["trace"] = state.matrix().trace().real();
  doc["forms_agree_residual"] = residual;
  doc["reduced_member"] = membership.member;
  doc["image_distance"] = membership.distance;
  doc["matrix"] = ordered_json::parse(json_matrix(state.matrix()));
  out.emit(doc.dump(2));
  return residual < 1e-10 && membership.member ? 0 : 1;
}

int run_toy_witness(double tol, const Output& out) {
  using namespace opflab;
  Mat e00 = Mat::Zero(2, 2), e11 = Mat::Zero(2, 2);
  e00(0, 0) = 1.0;
  e11(1, 1) = 1.0;
  auto omega = toy::ToyState::from_rho_mixture(2, {{0.5, e00}, {0.5, e11}});
  auto ensemble = toy::convex_decomposition(omega);
  double recon = (ensemble.reconstruct(2) - omega.matrix()).norm();
  auto membership = toy::is_reduced_state(omega, 2, tol);

  ordered_json doc;
  doc["state"] = "(|0><0|^x2 + |1><1|^x2)/2";
  doc["ensemble_size"] = ensemble.items.size();
  doc["reconstruction_residual"] = recon;
  doc["reduced_member"] = membership.member;
  doc["image_distance"] = membership.distance;
  bool witnessed = !membership.member && membership.distance >= 0.02 && recon < 1e-9;
  doc["purification_violated"] = witnessed;
  out.emit(doc.dump(2));
  return witnessed ? 0 : 1;
}

int run_toy_figure(int samples, std::uint64_t seed, const Output& out) {
  auto data = opflab::toy::figure_data(samples, seed);
  std::ostringstream os;
  opflab::toy::write_figure_csv(data, os);
  out.emit(os.str());
  return 0;
}

int run_toy_mub(int d, const Output& out) {
  auto meas = opflab::toy::canonical_measurement(d);
  double residual = meas.normalization_residual();
  bool pass = residual < 1e-12;
  ordered_json doc;
  doc["d"] = d;
  doc["effects"] = meas.effects.size();
  doc["sum_residual"] = residual;
  doc["pass"] = pass;
  if (out.format == "text") {
    std::ostringstream os;
    os << meas.effects.size() << " effects, sum residual " << residual << (pass ? " (pass)" : " (FAIL)");
    out.emit(os.str());
  } else {
    out.emit(doc.dump(2));
  }
  return pass ? 0 : 1;
}

int run_cache(const std::string& action, int n, const Output& out) {
  auto& cache = opflab::rep::CharacterCache::instance();
  ordered_json doc;
  doc["action"] = action;
  doc["n"] = n;
  try {
    if (action == "warm") {
      doc["entries"] = cache.warm(n);
    } else if (action == "clear") {
      cache.clear(n);
      doc["entries"] = 0;
    } else {
      doc["entries"] = cache.entry_count(n);
    }
  } catch (const std::exception& e) {
    std::cerr << "cache: " << e.what() << '\n';
    return 1;
  }
  doc["cache_dir"] = opflab::rep::CharacterCache::cache_dir().string();
  out.emit(doc.dump(2));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toy-theory and representation-theory workbench"};
  app.require_subcommand(1);

  int exit_code = 0;
  auto guard = [&exit_code](auto&& fn) {
    try {
      exit_code = fn();
    } catch (const opflab::toy::NotPrime& e) {
      std::cerr << "error: " << e.what() << '\n';
      exit_code = 2;
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << '\n';
      exit_code = 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      exit_code = 1;
    }
  };

  // dim
  {
    auto* cmd = app.add_subcommand("dim", "dimension of the representation labelled (2j, j^{d-2})");
    auto j = std::make_shared<int>(1);
    auto d = std::make_shared<int>(2);
    auto out = std::make_shared<Output>();
    cmd->add_option("--j", *j, "spin-like index j")->required();
    cmd->add_option("--d", *d, "local Hilbert-space dimension")->required();
    add_output_flags(cmd, *out, "text");
    cmd->callback([&, j, d, out] { guard([&] { return run_dim(*j, *d, *out); }); });
  }

  // kron
  {
    auto* cmd = app.add_subcommand("kron", "Kronecker coefficient g(lambda, mu, nu)");
    auto l = std::make_shared<std::string>();
    auto m = std::make_shared<std::string>();
    auto n = std::make_shared<std::string>();
    auto out = std::make_shared<Output>();
    cmd->add_option("--lambda", *l, "partition, e.g. 4,2^7")->required();
    cmd->add_option("--mu", *m, "partition")->required();
    cmd->add_option("--nu", *n, "partition")->required();
    add_output_flags(cmd, *out, "text");
    cmd->callback([&, l, m, n, out] { guard([&] { return run_kron(*l, *m, *n, *out); }); });
  }

  // branch
  {
    auto* cmd = app.add_subcommand("branch", "restriction of an SU(m*n) irrep to SU(m) x SU(n)");
    auto l = std::make_shared<std::string>();
    auto m = std::make_shared<int>(2);
    auto n = std::make_shared<int>(2);
    auto out = std::make_shared<Output>();
    cmd->add_option("--lambda", *l, "partition labelling the SU(m*n) irrep")->required();
    cmd->add_option("--m", *m, "first factor dimension")->required();
    cmd->add_option("--n", *n, "second factor dimension")->required();
    add_output_flags(cmd, *out, "json");
    cmd->callback([&, l, m, n, out] { guard([&] { return run_branch(*l, *m, *n, *out); }); });
  }

  // certify-lt
  {
    auto* cmd = app.add_subcommand("certify-lt", "local-tomography violation certificate");
    auto j = std::make_shared<int>(2);
    auto da = std::make_shared<int>(3);
    auto db = std::make_shared<int>(3);
    auto direct = std::make_shared<bool>(false);
    auto out = std::make_shared<Output>();
    cmd->add_option("--j", *j, "spin-like index j (1 = quantum control)")->required();
    cmd->add_option("--da", *da, "first local dimension")->required();
    cmd->add_option("--db", *db, "second local dimension")->required();
    cmd->add_flag("--direct", *direct, "force the direct Kronecker computation for j > 3");
    add_output_flags(cmd, *out, "json");
    cmd->callback([&, j, da, db, direct, out] {
      guard([&] { return run_certify(*j, *da, *db, *direct, *out); });
    });
  }

  // k-values
  {
    auto* cmd = app.add_subcommand("k-values", "achievable mixed-state parameter counts K");
    auto d = std::make_shared<int>(2);
    auto limit = std::make_shared<std::string>("14");
    auto out = std::make_shared<Output>();
    cmd->add_option("--d", *d, "local dimension (d >= 3 is experimental)")->required();
    cmd->add_option("--limit", *limit, "largest K to report")->required();
    add_output_flags(cmd, *out, "text");
    cmd->callback([&, d, limit, out] { guard([&] { return run_kvalues(*d, *limit, *out); }); });
  }

  // toy
  {
    auto* toy_cmd = app.add_subcommand("toy", "bipartite toy-theory operations");
    toy_cmd->require_subcommand(1);

    {
      auto* cmd = toy_cmd->add_subcommand("verify", "run the consistency suite C1-C5 + no-signalling");
      auto da = std::make_shared<int>(2);
      auto db = std::make_shared<int>(2);
      auto trials = std::make_shared<int>(100);
      auto seed = std::make_shared<std::uint64_t>(1);
      auto neg = std::make_shared<bool>(false);
      auto out = std::make_shared<Output>();
      cmd->add_option("--da", *da, "Alice's dimension (2 or 3)")->required();
      cmd->add_option("--db", *db, "Bob's dimension (2 or 3)")->required();
      cmd->add_option("--trials", *trials, "seeded trials per constraint");
      cmd->add_option("--seed", *seed, "base seed; trial t uses seed + t");
      cmd->add_flag("--negative-control", *neg,
                    "corrupt the ⋆-product (drops the A⊗A term) so C3 must fail");
      add_output_flags(cmd, *out, "json");
      cmd->callback([&, da, db, trials, seed, neg, out] {
        guard([&] { return run_toy_verify(*da, *db, *trials, *seed, *neg, *out); });
      });
    }
    {
      auto* cmd = toy_cmd->add_subcommand("reduce", "reduced state of a seeded random bipartite ray");
      auto da = std::make_shared<int>(2);
      auto db = std::make_shared<int>(2);
      auto seed = std::make_shared<std::uint64_t>(1);
      auto out = std::make_shared<Output>();
      cmd->add_option("--da", *da, "Alice's dimension")->required();
      cmd->add_option("--db", *db, "Bob's dimension")->required();
      cmd->add_option("--seed", *seed, "seed for the bipartite state");
      add_output_flags(cmd, *out, "json");
      cmd->callback([&, da, db, seed, out] {
        guard([&] { return run_toy_reduce(*da, *db, *seed, *out); });
      });
    }
    {
      auto* cmd = toy_cmd->add_subcommand("witness",
                                          "purification-violation witness (|00><00| + |11><11|)/2");
      auto tol = std::make_shared<double>(1e-3);
      auto out = std::make_shared<Output>();
      cmd->add_option("--tol", *tol, "membership tolerance for the image search");
      add_output_flags(cmd, *out, "json");
      cmd->callback([&, tol, out] { guard([&] { return run_toy_witness(*tol, *out); }); });
    }
    {
      auto* cmd = toy_cmd->add_subcommand("figure", "2-D projection clouds of the d=2 state space");
      auto samples = std::make_shared<int>(10000);
      auto seed = std::make_shared<std::uint64_t>(7);
      auto out = std::make_shared<Output>();
      cmd->add_option("--samples", *samples, "points per cloud");
      cmd->add_option("--seed", *seed, "sampling seed");
      add_output_flags(cmd, *out, "csv");
      cmd->callback([&, samples, seed, out] {
        guard([&] { return run_toy_figure(*samples, *seed, *out); });
      });
    }
    {
      auto* cmd = toy_cmd->add_subcommand("mub", "canonical measurement from mutually unbiased bases");
      auto d = std::make_shared<int>(2);
      auto out = std::make_shared<Output>();
      cmd->add_option("--d", *d, "prime local dimension")->required();
      add_output_flags(cmd, *out, "json");
      cmd->callback([&, d, out] { guard([&] { return run_toy_mub(*d, *out); }); });
    }
  }

  // cache
  {
    auto* cmd = app.add_subcommand("cache", "character-cache administration");
    auto action = std::make_shared<std::string>("stat");
    auto n = std::make_shared<int>(0);
    auto out = std::make_shared<Output>();
    cmd->add_option("--action", *action, "warm | clear | stat")
        ->required()
        ->check(CLI::IsMember({"warm", "clear", "stat"}));
    cmd->add_option("--n", *n, "symmetric-group degree")->required();
    add_output_flags(cmd, *out, "json");
    cmd->callback([&, action, n, out] { guard([&] { return run_cache(*action, *n, *out); }); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return exit_code;
}
