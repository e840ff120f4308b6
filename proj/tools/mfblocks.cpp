// mfblocks: Morita-Frobenius numbers, verification suites, Ext quivers and
// theta recovery for the blocks B(theta).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>

#include "mfblocks/mfblocks.hpp"

namespace {

struct Options {
  uint64_t ell = 2;
  uint64_t p = 7;
  uint64_t r = 3;
  uint64_t theta = 1;
  std::optional<uint64_t> n;
  std::optional<uint64_t> mf_r;
  std::string suite = "quick";
  uint64_t seed = 1;
  std::vector<std::string> only;
  std::string format = "dot";
  std::string file;
};

int cmd_mf(const Options& o) {
  using mfb::json;
  if (o.n.has_value() == o.mf_r.has_value()) throw mfb::Error("mf: give exactly one of --n and --r");
  json out = {{"ell", o.ell}};
  if (o.n) {
    const mfb::TargetParams t = mfb::params_for_target(o.ell, *o.n);
    out["n"] = *o.n;
    out["r"] = t.r;
    out["p"] = t.p;
    out["mf"] = mfb::mf_number(o.ell, t.r);
  } else {
    if (!mfb::nt::is_prime(o.ell)) throw mfb::Error("mf: ell must be prime");
    out["r"] = *o.mf_r;
    out["mf"] = mfb::mf_number(o.ell, *o.mf_r);
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_verify(const Options& o) {
  mfb::Verifier v({o.ell, o.p, o.r, o.theta, o.suite, o.seed});
  std::mutex out_mu;
  auto emit = [&](const mfb::CheckResult& res) {
    std::lock_guard<std::mutex> lock(out_mu);
    std::cout << mfb::to_json(v.params(), res).dump() << std::endl;
  };
  if (o.only.empty()) return v.run_all(emit) ? 0 : 1;
  bool ok = true;
  for (const auto& name : o.only) {
    const mfb::CheckResult res = v.run(name);
    ok = ok && res.pass;
    emit(res);
  }
  return ok ? 0 : 1;
}

std::string quiver_text(const Options& o) {
  using mfb::json;
  const mfb::Params P = mfb::params_make(o.ell, o.p, o.r);
  const mfb::TwistedB0 T(P, {mfb::CharGroup::Z, o.theta % P.r});
  std::vector<mfb::SimpleLabel> labels;
  for (const auto& s : mfb::simples(P, T.theta())) labels.push_back(s.label);
  const auto table = mfb::ext_quiver(T, labels);
  std::ostringstream out;
  if (o.format == "json") {
    json vertices = json::array();
    for (const auto& l : labels) vertices.push_back(mfb::simple_label_string(l));
    out << json{{"params", mfb::to_json(P)}, {"theta", T.theta().e}, {"vertices", vertices}, {"ext", table}}.dump()
        << "\n";
  } else if (o.format == "dot") {
    out << "digraph ext_quiver {\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
      out << "  v" << i << " [label=\"" << mfb::simple_label_string(labels[i]) << "\"];\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = 0; j < labels.size(); ++j)
        for (uint64_t k = 0; k < table[i][j]; ++k) out << "  v" << i << " -> v" << j << ";\n";
    out << "}\n";
  } else {
    throw mfb::Error("quiver: format must be dot or json");
  }
  return out.str();
}

int cmd_quiver(const Options& o) {
  const std::string text = quiver_text(o);
  if (o.file.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(o.file);
  if (!f) throw mfb::Error("quiver: cannot open " + o.file);
  f << text;
  if (!f) throw mfb::Error("quiver: write failed for " + o.file);
  return 0;
}

int cmd_recover(const Options& o) {
  using mfb::json;
  const mfb::Params P = mfb::params_make(o.ell, o.p, o.r);
  const mfb::Character theta{mfb::CharGroup::Z, o.theta % P.r};
  mfb::check_faithful_theta(P, theta);
  const mfb::TwistedB0 T(P, theta);
  const mfb::PairingTable table = mfb::commutation_pairing(T);
  const auto recovered = mfb::recover_theta(table, P);
  std::cout << json{{"params", mfb::to_json(P)},
                    {"theta", theta.e},
                    {"pairing_exponents", mfb::to_json(P, table)},
                    {"recovered", recovered}}
                   .dump()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Morita-Frobenius numbers and structure checks for blocks B(theta)"};
  app.set_config("--config", "", "key=value file mirroring the flags");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--ell", o.ell, "characteristic ell (prime)");
  app.add_option("--p", o.p, "prime p with r | p - 1");
  app.add_option("--r", o.r, "order r of L_i and Z");
  app.add_option("--theta", o.theta, "exponent j of the faithful character theta of Z");
  app.add_option("--seed", o.seed, "PRNG seed for sampled checks");

  auto* mf = app.add_subcommand("mf", "mf for a given r, or the recipe r = ell^n + 1");
  mf->add_option("--n", o.n, "target mf number");
  mf->add_option("--r", o.mf_r, "order r");

  auto* verify = app.add_subcommand("verify", "run a verification suite, one JSON line per check");
  verify->add_option("--suite", o.suite, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--check", o.only, "run only the named checks");

  auto* quiver = app.add_subcommand("quiver", "emit the Ext quiver of B_0");
  quiver->add_option("--out", o.format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  quiver->add_option("--file", o.file, "write to this file instead of stdout");

  auto* recover = app.add_subcommand("recover", "print the commutation pairing and the recovered theta pair");

  CLI11_PARSE(app, argc, argv);
  try {
    if (mf->parsed()) return cmd_mf(o);
    if (verify->parsed()) return cmd_verify(o);
    if (quiver->parsed()) return cmd_quiver(o);
    if (recover->parsed()) return cmd_recover(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
