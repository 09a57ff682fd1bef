#include "rcw/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rcw/batch.hpp"
#include "rcw/generate.hpp"
#include "rcw/render.hpp"
#include "rcw/verify.hpp"

namespace rcw {

namespace {

constexpr int kUsage = 1;

struct CurveInput {
  std::string file;
  std::string expr;
  std::optional<double> tol_residual, tol_cluster, tol_real_snap;
};

void add_curve_options(CLI::App* cmd, CurveInput& in) {
  cmd->add_option("curve", in.file, "curve-spec file ('-' reads stdin)");
  cmd->add_option("-e,--expr", in.expr, "inline curve spec, e.g. \"x = (1-t^2)/(1+t^2); y = 2*t/(1+t^2)\"");
  cmd->add_option("--tol-residual", in.tol_residual, "root residual tolerance");
  cmd->add_option("--tol-cluster", in.tol_cluster, "root clustering tolerance");
  cmd->add_option("--tol-real-snap", in.tol_real_snap, "reality snapping tolerance");
}

CurveSpec load_spec(const CurveInput& in) {
  std::string text;
  if (!in.expr.empty()) {
    if (!in.file.empty()) throw Error(ErrorKind::InvalidArgument, "give either a curve file or --expr, not both");
    text = in.expr;
  } else if (in.file == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else if (!in.file.empty()) {
    std::ifstream f(in.file, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot read " + in.file);
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  } else {
    throw Error(ErrorKind::InvalidArgument, "no curve given (file argument or --expr)");
  }
  CurveSpec spec = parse_curve_spec(text);
  if (in.tol_residual) spec.tol_residual = in.tol_residual;
  if (in.tol_cluster) spec.tol_cluster = in.tol_cluster;
  if (in.tol_real_snap) spec.tol_real_snap = in.tol_real_snap;
  if (spec.name.empty() && !in.file.empty() && in.file != "-") spec.name = in.file;
  return spec;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  f << text;
}

std::string param_text(const Parameter& p) {
  if (p.at_infinity) return "inf";
  std::ostringstream os;
  os << p.t.real();
  if (p.t.imag() != 0.0) os << (p.t.imag() < 0 ? " - " : " + ") << std::abs(p.t.imag()) << "i";
  return os.str();
}

std::string point_text(const ProjPoint& z) {
  std::ostringstream os;
  if (std::abs(z[0]) > 0.0) {
    const Complex x = z[1] / z[0], y = z[2] / z[0];
    os << "(" << x.real() << ", " << y.real() << ")";
    if (x.imag() != 0.0 || y.imag() != 0.0) os << " + i(" << x.imag() << ", " << y.imag() << ")";
  } else {
    os << "(0 : " << z[1] << " : " << z[2] << ")";
  }
  return os.str();
}

void print_audit(const AuditReport& a, std::ostream& out) {
  out << "audit: " << (a.admissible ? "admissible" : "rejected") << (a.proper ? "" : ", improper") << "\n";
  for (const auto& n : a.nodes)
    out << "  " << to_string(n.kind) << " node at " << point_text(n.image) << ", params {"
        << param_text(n.params[0]) << ", " << param_text(n.params[1]) << "}"
        << (n.transversal ? "" : ", not transversal") << "\n";
  for (const auto& r : a.reasons) out << "  reason: " << r << "\n";
  for (const auto& w : a.warnings) out << "  warning: " << w << "\n";
}

void print_poles(const std::vector<PoleRecord>& poles, std::ostream& out) {
  for (const auto& p : poles)
    out << "  pole t0 = " << param_text(Parameter::finite(p.t0)) << " (mult " << p.mult << ") -> "
        << point_text(p.infinity_point) << " " << to_string(p.side) << "\n";
}

void print_report(const VerificationReport& r, std::ostream& out) {
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("-"); };
  out << (r.name.empty() ? std::string("curve") : r.name) << ": degree " << r.degree << "\n";
  if (r.audit) print_audit(*r.audit, out);
  out << "w_gauss = " << opt(r.w_gauss()) << ", w_regular = " << opt(r.w_regular) << ", w_sweep = " << opt(r.w_sweep)
      << ", pole balance = " << opt(r.rhs) << "\n";
  print_poles(r.poles, out);
  if (r.census)
    out << "census: (Min,Plus) " << r.census->min_plus << ", (Min,Minus) " << r.census->min_minus << ", (Max,Plus) "
        << r.census->max_plus << ", (Max,Minus) " << r.census->max_minus << "\n";
  if (r.ledger) {
    out << "ledger gaps:";
    for (int g : r.ledger->gap_values()) out << " " << g;
    out << ", net " << r.ledger->net << "\n";
  }
  for (const auto& v : r.violations) out << "violation: " << v << "\n";
  for (const auto& e : r.errors) out << "error: " << e << "\n";
  out << "main theorem: " << to_string(r.main_theorem) << "\n";
}

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::Io:
    case ErrorKind::InvalidArgument: return kUsage;
    case ErrorKind::NoncompactRealPole:
    case ErrorKind::NoncompactAtInfinity:
    case ErrorKind::CuspOnRealLocus: return int(Outcome::HypothesesViolated);
    case ErrorKind::RealPointAtInfinity: return int(Outcome::DegenerateAtInfinity);
    default: return int(Outcome::NumericalFailure);
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotation numbers of real rational plane curves and their poles at infinity"};
  app.require_subcommand(1);

  CurveInput in;
  std::uint64_t seed = 1;
  std::string json_path, svg_path;
  bool timings = false;
  int harmonics = 3, count = 1;
  unsigned threads = 0;

  auto* check = app.add_subcommand("check", "run every stage and verify the pole-balance identity");
  auto* audit_cmd = app.add_subcommand("audit", "classify self-intersections");
  auto* whitney = app.add_subcommand("whitney", "rotation number by angle tracking and by a regular value");
  auto* infinity = app.add_subcommand("infinity", "poles, their sides at infinity and the pole balance");
  auto* sweep = app.add_subcommand("sweep", "tangency census and jump ledger of a line sweep");
  auto* render = app.add_subcommand("render", "draw the real locus as SVG");
  auto* generate = app.add_subcommand("generate", "draw random admissible trigonometric curves");
  auto* batch = app.add_subcommand("batch", "verify many generated curves");

  for (auto* cmd : {check, audit_cmd, whitney, infinity, sweep, render}) {
    add_curve_options(cmd, in);
    cmd->add_option("--seed", seed, "seed for direction choices");
  }
  for (auto* cmd : {check, audit_cmd, whitney, infinity, sweep}) cmd->add_option("--json", json_path, "write JSON ('-' for stdout)");
  check->add_option("--svg", svg_path, "also write an SVG drawing");
  check->add_flag("--timings", timings, "include stage timings in the JSON");
  render->add_option("--svg", svg_path, "output path")->required();
  generate->add_option("--seed", seed, "generator seed");
  generate->add_option("--harmonics", harmonics, "harmonic bound K")->check(CLI::Range(1, 8));
  generate->add_option("--count", count, "number of curves")->check(CLI::Range(1, 100000));
  batch->add_option("--seed", seed, "campaign seed");
  batch->add_option("--harmonics", harmonics, "largest harmonic bound (curves cycle through 1..K)")->check(CLI::Range(1, 8));
  batch->add_option("--count", count, "number of curves")->check(CLI::Range(1, 100000));
  batch->add_option("--threads", threads, "worker threads (0: all cores)");
  batch->add_option("--json", json_path, "write the campaign summary as JSON");
  batch->add_flag("--timings", timings, "include wall-clock time in the JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  // with JSON on stdout the human-readable summary is dropped
  std::ostream quiet(nullptr);
  std::ostream& text = json_path == "-" ? quiet : out;

  try {
    if (*generate) {
      for (int i = 0; i < count; ++i) {
        const std::uint64_t s = seed + std::uint64_t(i);
        const GeneratedCurve g = generate_curve(s, harmonics);
        out << "# seed " << s << ", K = " << harmonics << ", redraws " << g.redraws << "\n"
            << print_curve_spec(spec_from_curve(g.curve, "generated seed=" + std::to_string(s))) << "\n";
      }
      return 0;
    }
    if (*batch) {
      BatchOptions bo;
      bo.seed = seed;
      bo.count = batch->count("--count") ? count : 200;
      bo.max_harmonics = batch->count("--harmonics") ? harmonics : 4;
      bo.threads = threads;
      const BatchSummary s = run_batch(bo);
      text << "generated " << s.generated << " of " << s.requested << " (" << s.exhausted << " exhausted), passed "
          << s.passed << "\n";
      for (const auto& item : s.items)
        for (const auto& f : item.failures) text << "  seed " << item.seed << ": " << f << "\n";
      if (!json_path.empty()) write_text(json_path, to_json(s, false, timings).dump(2) + "\n", out);
      return s.all_passed() ? 0 : int(Outcome::NumericalFailure);
    }

    const CurveSpec spec = load_spec(in);
    const VerifyOptions vo{seed, spec.tolerances()};

    if (*check || *render) {
      const VerificationReport r = verify_all(spec, vo);
      if (*check) {
        print_report(r, text);
        if (!json_path.empty()) write_text(json_path, to_json(r, timings).dump(2) + "\n", out);
      }
      if (!svg_path.empty()) render_svg(to_curve(spec), r, svg_path);
      return *check ? int(r.outcome) : 0;
    }

    const RationalPlaneCurve c = to_curve(spec);
    nlohmann::ordered_json j;
    int code = 0;
    if (*audit_cmd) {
      const AuditReport a = audit(c, vo.tol);
      print_audit(a, text);
      j = to_json(a);
      code = a.admissible ? 0 : int(Outcome::HypothesesViolated);
    } else if (*whitney) {
      const WindingResult g = gauss_winding(c);
      const int reg = regular_value_degree(c, seed);
      text << "w_gauss = " << g.w << " (raw " << g.raw_turn << ", " << g.samples_used << " samples)\n"
          << "w_regular = " << reg << "\n";
      j["w_gauss"] = g.w;
      j["raw_turn"] = g.raw_turn;
      j["samples_used"] = g.samples_used;
      j["w_regular"] = reg;
      code = g.w == reg ? 0 : int(Outcome::NumericalFailure);
    } else if (*infinity) {
      const auto poles = pole_table(c, vo.tol);
      print_poles(poles, text);
      j["poles"] = nlohmann::ordered_json::array();
      for (const auto& p : poles) j["poles"].push_back(to_json(p));
      try {
        const int rhs = hemisphere_balance(poles);
        text << "pole balance = " << rhs << "\n";
        j["rhs"] = rhs;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::RealPointAtInfinity) throw;
        text << e.what() << "\n";
        j["rhs"] = nullptr;
        j["error"] = e.what();
        code = int(Outcome::DegenerateAtInfinity);
      }
    } else if (*sweep) {
      const AuditReport a = audit(c, vo.tol);
      if (!a.admissible) {
        print_audit(a, text);
        return int(Outcome::HypothesesViolated);
      }
      const double phi = choose_direction(c, seed, a);
      const auto events = detect_events(c, phi);
      std::optional<int> rhs;
      try {
        rhs = hemisphere_balance(c, vo.tol);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::RealPointAtInfinity) throw;
        code = int(Outcome::DegenerateAtInfinity);
      }
      const SweepCensus cs = census(events);
      const JumpLedger ledger = jump_ledger(c, phi, events, rhs, cs.w_plus);
      text << "direction " << phi << " rad, " << events.size() << " events\n";
      for (const auto& e : events)
        text << "  t = " << e.t << ", c = " << e.c << ": (" << to_string(e.kind) << ", " << to_string(e.align) << ")\n";
      text << "w_plus = " << cs.w_plus << ", w_minus = " << cs.w_minus << "\nledger gaps:";
      for (int g : ledger.gap_values()) text << " " << g;
      text << ", net " << ledger.net << "\n";
      j["angle"] = phi;
      j["events"] = nlohmann::ordered_json::array();
      for (const auto& e : events) j["events"].push_back(to_json(e));
      j["census"] = to_json(cs);
      j["ledger"] = to_json(ledger);
    }
    if (!json_path.empty()) write_text(json_path, j.dump(2) + "\n", out);
    return code;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_for(e);
  }
}

}  // namespace rcw
