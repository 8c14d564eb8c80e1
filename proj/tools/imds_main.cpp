// imds: command-line front end.
//
// Exit status: 0 affirmative verdict / completed run, 1 negative verdict,
// 2 bad input or library error, 3 enumeration interrupted (resumable).

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include "imds/checkpoint.hpp"
#include "imds/enumerator.hpp"
#include "imds/text_format.hpp"

using namespace imds;
using nlohmann::json;

namespace {

std::atomic<bool> g_cancel{false};

extern "C" void on_sigint(int) { g_cancel.store(true); }

struct FieldOpts {
  unsigned m = 0;
  std::string poly;
};

void add_field_opts(CLI::App* cmd, FieldOpts& o) {
  cmd->add_option("-m,--degree", o.m, "extension degree m, 3..8")
      ->required()
      ->check(CLI::Range(kMinDegree, kMaxDegree));
  cmd->add_option("--poly", o.poly, "modulus as a hex bit pattern, e.g. 0x13");
}

Field make_field(const FieldOpts& o) {
  if (!o.poly.empty()) return Field(o.m, parse_poly(o.poly));
  const std::string var = "IMDS_DEFAULT_POLY_" + std::to_string(o.m);
  if (const char* env = std::getenv(var.c_str()); env && *env) return Field(o.m, parse_poly(env));
  return Field(o.m);
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

Notation notation(bool alpha) { return alpha ? Notation::alpha : Notation::hex; }

int field_info(const FieldOpts& o) {
  const Field f = make_field(o);
  json j;
  j["m"] = f.degree();
  j["poly"] = format_poly(f.poly());
  j["order"] = f.order();
  j["units"] = f.unit_count();
  j["generator"] = format_elem(f, f.generator());
  json powers = json::array();
  for (unsigned k = 0; k < std::min(16u, f.unit_count()); ++k)
    powers.push_back(format_elem(f, f.alpha_pow(k)));
  j["alpha_powers"] = powers;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int make_rep(const FieldOpts& o, const std::string& tuple_text, bool alpha, bool as_json) {
  const Field f = make_field(o);
  const RepTuple t = parse_tuple(f, tuple_text);
  const Mat4 R = build_representative(f, t);
  const bool mds = is_mds_full(f, R);
  if (!is_mds_viable(f, t)) std::cerr << "warning: not MDS-viable (d = 1 or r = pq)\n";
  else if (!mds) std::cerr << "warning: not MDS\n";
  if (as_json) {
    json j = rep_record(f, t, R, notation(alpha));
    j["mds"] = mds;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << format_matrix(f, R, notation(alpha));
  }
  return mds ? 0 : 1;
}

int check(const FieldOpts& o, const std::string& path, bool as_json) {
  const Field f = make_field(o);
  const Mat4 M = parse_matrix(f, read_input(path));
  const bool inv = is_involutory(f, M);
  const bool mds = is_mds_full(f, M);
  const bool sums = row_col_sums_one(M);
  const unsigned rk = rank(f, M + identity<4>());
  if (as_json) {
    std::cout << json{{"involutory", inv}, {"mds", mds}, {"row_col_sums_one", sums}, {"rank_M_plus_I", rk}}.dump()
              << '\n';
  } else {
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::cout << "involutory: " << yn(inv) << '\n'
              << "MDS: " << yn(mds) << '\n'
              << "row-sums-1: " << yn(sums) << '\n'
              << "rank(M+I4): " << rk << '\n';
  }
  return inv && mds ? 0 : 1;
}

int canonical(const FieldOpts& o, const std::string& path, bool alpha) {
  const Field f = make_field(o);
  const Mat4 M = parse_matrix(f, read_input(path));
  const Canonical c = canonicalize(f, M, true);
  std::cout << canonical_json(f, c, notation(alpha)).dump() << '\n';
  return 0;
}

struct EnumOpts {
  std::string mode = "count";
  unsigned jobs = 1;
  std::string checkpoint;
  bool resume = false;
  bool force = false;
  bool verify = false;
  bool progress = false;
  std::optional<std::uint64_t> range_begin, range_end;
  std::uint64_t interval = std::uint64_t{1} << 30;
};

int enumerate(const FieldOpts& o, const EnumOpts& e, bool alpha) {
  const Field f = make_field(o);
  const SearchMode mode = e.mode == "count" ? SearchMode::count
                          : e.mode == "reps" ? SearchMode::stream_reps
                                             : SearchMode::stream_all;
  if (mode == SearchMode::stream_all && f.degree() >= 6 && !e.force) {
    std::cerr << "error: --mode all at m >= 6 emits (2^m-1)^3 records per representative; "
                 "pass --force to proceed\n";
    return 2;
  }
  if (e.resume && e.checkpoint.empty()) {
    std::cerr << "error: --resume needs --checkpoint\n";
    return 2;
  }
  SearchJob job = make_job(f, mode, std::max(1u, e.jobs));
  if (e.range_begin) job.range.begin = *e.range_begin;
  if (e.range_end) job.range.end = *e.range_end;
  job.checkpoint_interval = std::max<std::uint64_t>(1, e.interval);
  job.verify = e.verify;

  RunControl ctl;
  ctl.checkpoint = e.checkpoint;
  ctl.resume = e.resume;
  ctl.cancel = &g_cancel;
  if (e.progress) {
    ctl.progress = [&](const EnumerationReport& r) {
      std::cerr << "progress: cursor " << r.cursor << " / " << job.range.end << ", reps " << r.rep_count
                << '\n';
    };
  }

  const Notation n = notation(alpha);
  RepSink sink;
  if (mode == SearchMode::stream_reps) {
    sink = [&](const RepTuple& t, const Mat4& R) { std::cout << rep_record(f, t, R, n).dump() << '\n'; };
  } else if (mode == SearchMode::stream_all) {
    sink = [&](const RepTuple& t, const Mat4& R) {
      expand_class(f, R, [&](const DiagTriple& D, const Mat4& M) {
        std::cout << member_record(f, t, D, M, n).dump() << '\n';
      });
    };
  }

  std::signal(SIGINT, on_sigint);
  const EnumerationReport r = enumerate_representatives(job, sink, ctl);
  std::cout.flush();

  json report = report_json(r);
  std::cerr << "elapsed: " << r.elapsed << " s, candidates tested: " << r.candidates_tested << '\n';
  report.erase("elapsed");
  if (mode == SearchMode::count) {
    std::cout << report.dump() << '\n';
  } else {
    std::cerr << report.dump() << '\n';
  }
  if (!r.completed) {
    std::cerr << "interrupted at tuple " << r.cursor
              << (e.checkpoint.empty() ? "; no checkpoint was requested\n" : "; rerun with --resume\n");
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Involutory 4x4 MDS matrices over GF(2^m)"};
  app.require_subcommand(1);
  app.fallthrough();
  bool alpha = false;
  app.add_flag("--alpha", alpha, "print field elements as generator powers a^k");

  FieldOpts fo;
  bool as_json = false;
  std::string input = "-";
  std::string tuple_text;
  EnumOpts eo;

  auto* info = app.add_subcommand("field-info", "field summary as JSON");
  add_field_opts(info, fo);

  auto* rep = app.add_subcommand("make-rep", "representative matrix for a tuple p,q,r,c,d");
  add_field_opts(rep, fo);
  rep->add_option("-t,--tuple", tuple_text, "five elements p,q,r,c,d (0x.. or a^k)")->required();
  rep->add_flag("--json", as_json, "JSON record instead of matrix text");

  auto* chk = app.add_subcommand("check", "involutory / MDS / row-sum / rank verdicts");
  add_field_opts(chk, fo);
  chk->add_option("matrix", input, "matrix file (16 tokens), - for stdin");
  chk->add_flag("--json", as_json, "JSON output");

  auto* can = app.add_subcommand("canonicalize", "JSON {R, D, tuple} for an involutory MDS matrix");
  add_field_opts(can, fo);
  can->add_option("matrix", input, "matrix file (16 tokens), - for stdin");

  auto* en = app.add_subcommand("enumerate", "search all class representatives");
  add_field_opts(en, fo);
  en->add_option("--mode", eo.mode, "count, reps or all")->check(CLI::IsMember({"count", "reps", "all"}));
  en->add_option("-j,--jobs", eo.jobs, "worker threads");
  en->add_option("--checkpoint", eo.checkpoint, "checkpoint file");
  en->add_flag("--resume", eo.resume, "continue from --checkpoint if present");
  en->add_option("--range-begin", eo.range_begin, "first tuple index");
  en->add_option("--range-end", eo.range_end, "one past the last tuple index");
  en->add_option("--checkpoint-interval", eo.interval, "tuples between checkpoints");
  en->add_flag("--force", eo.force, "allow --mode all for m >= 6");
  en->add_flag("--verify", eo.verify, "re-check every hit with the full MDS test");
  en->add_flag("--progress", eo.progress, "progress lines on stderr");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*info) return field_info(fo);
    if (*rep) return make_rep(fo, tuple_text, alpha, as_json);
    if (*chk) return check(fo, input, as_json);
    if (*can) return canonical(fo, input, alpha);
    if (*en) return enumerate(fo, eo, alpha);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::not_mds || e.code() == ErrorCode::not_involutory ? 1 : 2;
  }
  return 2;
}
