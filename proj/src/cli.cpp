#include "semiloc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "semiloc/channel_io.hpp"
#include "semiloc/corpus.hpp"
#include "semiloc/factorize.hpp"

namespace semiloc::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct CommonOptions {
  double tol = kSemicausalTol;
  std::string format = "human";
  bool machine() const { return format == "machine"; }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--tol", opts.tol, "Tolerance for every pass/fail decision")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--format", opts.format, "Report format")
      ->check(CLI::IsMember({"human", "machine"}))
      ->capture_default_str();
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

std::ostream& num(std::ostream& os) { return os << std::setprecision(10); }

// ---- check -----------------------------------------------------------------

int cmd_check(const std::string& input, const CommonOptions& opts, std::ostream& out) {
  const auto start = Clock::now();
  const BipartiteMap m = read_channel_file(input).as_bipartite();
  const CausalityVerdict v = is_causal(m, opts.tol);
  const double elapsed = seconds_since(start);

  if (opts.machine()) {
    out << json{{"command", "check"},
                {"input", input},
                {"dims", {{"dA", m.dims().dA}, {"dB", m.dims().dB}}},
                {"verdict", verdict_to_json(v)},
                {"tol", opts.tol},
                {"duration_s", elapsed}}
               .dump()
        << '\n';
    return kExitOk;
  }
  num(out) << "input: " << input << " (dA=" << m.dims().dA << ", dB=" << m.dims().dB << ")\n"
           << "semicausal, B->A blocked: " << yes_no(v.semicausal_BtoA_blocked)
           << "  residual_A = " << v.residual_A << '\n'
           << "semicausal, A->B blocked: " << yes_no(v.semicausal_AtoB_blocked)
           << "  residual_B = " << v.residual_B << '\n'
           << "causal:                   " << yes_no(v.causal) << '\n'
           << "product localizable:      " << yes_no(v.product_localizable) << '\n'
           << "tol: " << opts.tol << "  elapsed: " << elapsed << " s\n";
  return kExitOk;
}

// ---- decompose -------------------------------------------------------------

int cmd_decompose(const std::string& input, const std::optional<std::string>& out_dir,
                  const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const ChannelFile file = read_channel_file(input);
  const BipartiteMap m = file.as_bipartite();

  std::optional<Decomposition> d;
  try {
    d = semilocalize(m, opts.tol);
  } catch (const NotSemicausal& e) {
    if (opts.machine()) {
      out << json{{"command", "decompose"},
                  {"input", input},
                  {"semicausal", false},
                  {"residual", e.residual()},
                  {"tol", opts.tol},
                  {"duration_s", seconds_since(start)}}
                 .dump()
          << '\n';
    } else {
      num(out) << "not semicausal: residual " << e.residual() << " >= tol " << opts.tol << '\n';
    }
    return kExitNegative;
  } catch (const NumericalFailure& e) {
    err << "decomposition failed: " << e.what() << '\n';
    return kExitNegative;
  }

  const VerificationReport check = verify_decomposition(m, *d, opts.tol);
  const double elapsed = seconds_since(start);
  json report{{"command", "decompose"},
              {"input", input},
              {"semicausal", true},
              {"decomposition",
               {{"dC", d->dC},
                {"dD", d->dD},
                {"reconstruction_residual", d->reconstruction_residual},
                {"F_unitality", d->F_unitality},
                {"compo_residual", d->compo_residual}}},
              {"verification", verification_to_json(check)},
              {"tol", opts.tol},
              {"duration_s", elapsed}};

  if (out_dir) {
    const fs::path dir(*out_dir);
    fs::create_directories(dir);
    const std::string base = file.metadata.name.empty() ? std::string("input") : file.metadata.name;
    write_text_file(dir / "G.json", format_channel(d->G, std::nullopt, Repr::kChoi, {base + ":G", {}}));
    write_text_file(dir / "F.json", format_channel(d->F, std::nullopt, Repr::kChoi, {base + ":F", {}}));
    write_text_file(dir / "report.json", report.dump(2) + "\n");
  }

  if (opts.machine()) {
    out << report.dump() << '\n';
  } else {
    num(out) << "input: " << input << " (dA=" << m.dims().dA << ", dB=" << m.dims().dB << ")\n"
             << "semilocal decomposition: dC = " << d->dC << ", dD = " << d->dD << '\n'
             << "reconstruction residual: " << d->reconstruction_residual << '\n'
             << "F unitality defect:      " << d->F_unitality << '\n'
             << "G CP margin:             " << check.g_cp_margin << '\n';
    if (out_dir) out << "wrote " << (fs::path(*out_dir) / "G.json").string() << ", F.json, report.json\n";
    out << "tol: " << opts.tol << "  elapsed: " << elapsed << " s\n";
  }
  return kExitOk;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const std::string& original, const std::string& g_path, const std::string& f_path,
               const CommonOptions& opts, std::ostream& out) {
  const auto start = Clock::now();
  const BipartiteMap m = read_channel_file(original).as_bipartite();
  const CpMap g = read_channel_file(g_path).map;
  const CpMap f = read_channel_file(f_path).map;
  const VerificationReport r = verify_factors(m, g, f, opts.tol);
  const double elapsed = seconds_since(start);

  if (opts.machine()) {
    out << json{{"command", "verify"},
                {"input", original},
                {"verification", verification_to_json(r)},
                {"tol", opts.tol},
                {"duration_s", elapsed}}
               .dump()
        << '\n';
  } else {
    num(out) << "choi distance:      " << r.choi_distance << '\n'
             << "F unitality defect: " << r.f_unitality_defect << '\n'
             << "G CP margin:        " << r.g_cp_margin << '\n'
             << "dC: " << r.dC << '\n'
             << (r.passed ? "PASS" : "FAIL") << " at tol " << opts.tol << '\n';
  }
  return r.passed ? kExitOk : kExitNegative;
}

// ---- gen -------------------------------------------------------------------

struct GenOptions {
  std::string kind;
  Index dA = 2, dB = 2, dC = 1;
  Index din = 2, dout = 2, rank = 1;
  std::uint64_t seed = 0;
  bool selective = false;
  std::string repr = "choi";
  std::optional<std::string> out;
};

int cmd_gen(const GenOptions& g, std::ostream& out) {
  const Repr repr = g.repr == "kraus" ? Repr::kKraus : Repr::kChoi;
  std::string text;
  if (g.kind.rfind("named:", 0) == 0) {
    const NamedExample ex = named_example(g.kind.substr(6));
    text = format_channel(ex.map.map(), ex.map.dims(), repr, {ex.name, {}});
  } else if (g.kind == "random_channel") {
    const CpMap e = random_channel(g.din, g.dout, g.rank, g.seed);
    text = format_channel(e, std::nullopt, repr, {"random_channel", g.seed});
  } else if (g.kind == "random_semicausal") {
    const BipartiteMap m = random_semicausal(g.dA, g.dB, g.dC, g.seed, g.selective);
    text = format_channel(m.map(), m.dims(), repr,
                          {g.selective ? "random_semicausal_selective" : "random_semicausal", g.seed});
  } else {
    throw std::invalid_argument("unknown kind '" + g.kind +
                                "' (expected named:<name>, random_channel, random_semicausal)");
  }
  if (g.out) {
    write_text_file(*g.out, text);
  } else {
    out << text;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semicausal operations: classify, factorize into one-way form, verify"};
  app.name("semiloc");
  app.require_subcommand(1);

  CommonOptions check_opts, decompose_opts, verify_opts;
  std::string check_input, decompose_input, verify_original, verify_g, verify_f;
  std::optional<std::string> decompose_out;
  GenOptions gen;

  auto* check = app.add_subcommand("check", "Report the four signaling properties of a bipartite map");
  check->add_option("input", check_input, "Channel file")->required();
  add_common(check, check_opts);

  auto* decompose = app.add_subcommand("decompose", "Factor a semicausal map as (G ⊗ id)∘(id ⊗ F)");
  decompose->add_option("input", decompose_input, "Channel file")->required();
  decompose->add_option("--out", decompose_out, "Directory for G.json, F.json, report.json");
  add_common(decompose, decompose_opts);

  auto* verify = app.add_subcommand("verify", "Recompose G and F and compare with the original");
  verify->add_option("original", verify_original, "Original bipartite channel file")->required();
  verify->add_option("G", verify_g, "Alice's factor")->required();
  verify->add_option("F", verify_f, "Bob's factor")->required();
  add_common(verify, verify_opts);

  auto* gen_cmd = app.add_subcommand("gen", "Write a corpus channel file");
  gen_cmd->add_option("kind", gen.kind, "named:<name> | random_channel | random_semicausal")->required();
  gen_cmd->add_option("--dA", gen.dA)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--dB", gen.dB)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--dC", gen.dC)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--din", gen.din)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--dout", gen.dout)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--rank", gen.rank, "Kraus rank for random_channel")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_flag("--selective", gen.selective, "random_semicausal with E(1) < 1");
  gen_cmd->add_option("--repr", gen.repr)->check(CLI::IsMember({"choi", "kraus"}));
  gen_cmd->add_option("--out", gen.out, "Output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*check) return cmd_check(check_input, check_opts, out);
    if (*decompose) return cmd_decompose(decompose_input, decompose_out, decompose_opts, out, err);
    if (*verify) return cmd_verify(verify_original, verify_g, verify_f, verify_opts, out);
    if (*gen_cmd) return cmd_gen(gen, out);
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace semiloc::cli
