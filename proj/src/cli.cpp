#include "apd/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "apd/antideriv.hpp"
#include "apd/error.hpp"
#include "apd/oracle.hpp"
#include "apd/orbit.hpp"
#include "apd/padic.hpp"
#include "apd/serialize.hpp"

namespace apd::cli {

namespace {

constexpr const char* kVersion = "apd 1.0.0";

// decimal or standard-form token; adds guidance when a plain decimal blows
// the size guard
ParsedValue parse_input(const std::string& token, std::optional<uint64_t> p) {
  try {
    return parse_value(token, p);
  } catch (const TooLarge& e) {
    throw TooLarge(std::string(e.what()) +
                   "; use the standard-form syntax a*p^(b*p^k) for huge values");
  }
}

std::string text_of(const PSplit& v) {
  try {
    return v.materialize().to_decimal();
  } catch (const TooLarge&) {
    return (v.exponent.is_zero() ? v.unit.to_decimal()
                                 : to_text(to_standard(v))) +
           " (~" + digits_estimate(v) + " digits)";
  }
}

struct Out {
  std::string human;
  ordered_json payload;
};

struct Args {
  uint64_t p = 2;
  std::string value;
  uint64_t terms = 10;
  uint64_t n = 1;
  uint64_t k0 = 0;
  uint64_t m = 0;
  int64_t range = 0;
  unsigned jobs = 1;
  std::vector<uint64_t> tuple;
  std::string out_path;
};

Out do_dp(const Args& a) {
  Prime p(a.p);
  ParsedValue v = parse_input(a.value, a.p);
  Out out;
  out.payload["p"] = a.p;
  if (v.plain) {
    BigInt r = dp(p, *v.plain);
    out.payload["x"] = v.plain->to_decimal();
    out.payload["dp"] = r.to_decimal();
    out.human = r.to_decimal();
  } else {
    PSplit r = dp_standard(*v.form);
    out.payload["x"] = to_text(*v.form);
    out.payload["dp"] = value_json(r);
    out.human = text_of(r);
  }
  return out;
}

Out do_d(const Args& a) {
  ParsedValue v = parse_input(a.value, std::nullopt);
  if (!v.plain)
    throw InvalidInput("d takes a plain decimal integer (the full derivative "
                       "needs every prime factor)");
  BigInt r = d_full(*v.plain);
  Out out;
  out.payload["x"] = v.plain->to_decimal();
  out.payload["d"] = r.to_decimal();
  out.human = r.to_decimal();
  return out;
}

Out do_ord_seq(const Args& a) {
  Prime p(a.p);
  ParsedValue v = parse_input(a.value, a.p);
  OrdSequence seq = v.plain ? ord_sequence(p, *v.plain, a.terms)
                            : ord_sequence(p, from_standard(*v.form), a.terms);
  Out out;
  out.payload["p"] = a.p;
  out.payload["x"] = v.plain ? v.plain->to_decimal() : to_text(*v.form);
  ordered_json j = to_json(seq);
  out.payload["terms"] = j["terms"];
  out.payload["truncated_at"] = j["truncated_at"];
  for (size_t i = 0; i < seq.terms.size(); ++i) {
    if (i) out.human += ' ';
    out.human += seq.terms[i].to_string();
  }
  return out;
}

Out do_inc_profile(const Args& a) {
  Prime p(a.p);
  ParsedValue v = parse_input(a.value, a.p);
  if (!v.plain) throw InvalidInput("inc-profile takes the exponent ell itself");
  IncProfile profile = inc_profile(p, *v.plain);
  return Out{profile.to_text(), to_json(profile)};
}

Out do_period(const Args& a) {
  Prime p(a.p);
  ParsedValue v = parse_input(a.value, a.p);
  uint64_t r = v.plain ? period(p, *v.plain) : period(p, from_standard(*v.form));
  Out out;
  out.payload["p"] = a.p;
  out.payload["x"] = v.plain ? v.plain->to_decimal() : to_text(*v.form);
  out.payload["period"] = r;
  out.human = std::to_string(r);
  return out;
}

Out do_classify(const Args& a) {
  Prime p(a.p);
  ParsedValue v = parse_input(a.value, a.p);
  OrbitClass c = v.plain ? classify(p, *v.plain) : classify(p, from_standard(*v.form));
  Out out;
  out.payload["p"] = a.p;
  out.payload["x"] = v.plain ? v.plain->to_decimal() : to_text(*v.form);
  ordered_json j = to_json(c);
  for (auto& [key, val] : j.items()) out.payload[key] = val;
  out.human = to_string(c.kind);
  if (c.kind == OrbitKind::FixedPoint)
    out.human += c.fixed_point ? " " + text_of(*c.fixed_point)
                               : " (value beyond size guard)";
  return out;
}

Out do_reverse(const Args& a) {
  Prime p(a.p);
  BigInt ell = reverse_construct(p, a.tuple);
  Out out;
  out.payload["p"] = a.p;
  out.payload["i"] = a.tuple;
  out.payload["ell"] = ell.to_decimal();
  out.human = ell.to_decimal();
  return out;
}

AntiSet anti_of(Prime p, const ParsedValue& v) {
  return v.plain ? anti_derivatives(p, *v.plain)
                 : anti_derivatives(p, from_standard(*v.form));
}

Out do_anti(const Args& a) {
  Prime p(a.p);
  ParsedValue v = parse_input(a.value, a.p);
  Out out;
  try {
    AntiSet s = anti_of(p, v);
    out.payload = to_json(s);
    for (size_t i = 0; i < s.members.size(); ++i) {
      if (i) out.human += '\n';
      out.human += to_text(s.members[i]);
      try {
        out.human += " = " + s.members[i].materialize().to_decimal();
      } catch (const TooLarge&) {
        out.human += " (~" + digits_estimate(from_standard(s.members[i])) + " digits)";
      }
    }
  } catch (const InfiniteSetError& e) {
    out.payload["p"] = a.p;
    out.payload["y"] = "0";
    out.payload["infinite"] = true;
    out.payload["description"] = e.set_description;
    out.human = "infinite: " + e.set_description;
  }
  return out;
}

Out do_count_anti(const Args& a) {
  Prime p(a.p);
  ParsedValue v = parse_input(a.value, a.p);
  AntiSet s = anti_of(p, v);
  Out out;
  out.payload["p"] = a.p;
  out.payload["y"] = v.plain ? v.plain->to_decimal() : to_text(*v.form);
  out.payload["count"] = s.count();
  out.human = std::to_string(s.count());
  return out;
}

Out do_count_anti_rational(const Args& a) {
  Prime p(a.p);
  ParsedValue v = parse_input(a.value, a.p);
  StandardForm prim = v.plain ? primitive_anti(p, *v.plain)
                              : primitive_anti(p, from_standard(*v.form));
  RationalCSet cs = c_set_rational(prim);
  Out out;
  out.payload["p"] = a.p;
  out.payload["y"] = v.plain ? v.plain->to_decimal() : to_text(*v.form);
  out.payload["count"] = cs.c_values.size();
  ordered_json arr = ordered_json::array();
  for (const BigInt& c : cs.c_values) arr.push_back(c.to_decimal());
  out.payload["c_values"] = std::move(arr);
  out.human = std::to_string(cs.c_values.size());
  return out;
}

Out do_construct(const Args& a, bool m_given) {
  Prime p(a.p);
  uint64_t k0 = a.k0;
  if (m_given) {
    BigInt k = construct_k0(p, a.m);
    if (!k.fits_uint64())
      throw TooLarge("k0 = " + k.to_decimal() + " from m = " +
                     std::to_string(a.m) + " is out of range");
    k0 = k.to_uint64();
  }
  ConstructionResult r = construct_with_n_antis(p, a.n, k0);
  Out out;
  out.payload = to_json(r);
  out.human = "k0 = " + std::to_string(r.k0);
  out.human += "\nb0 = " + r.b0.to_decimal();
  out.human += "\na0 = " + r.a0.to_decimal();
  out.human += "\nx0 = " + to_text(r.x0);
  out.human += "\ny = " + text_of(r.y);
  out.human += "\ncount = " + std::to_string(r.n);
  return out;
}

Out do_verify_sweep(const Args& a, int& exit_code) {
  Prime p(a.p);
  oracle::SweepOptions opts;
  opts.jobs = a.jobs;
  oracle::SweepReport report = oracle::sweep_invert(p, a.range, opts);
  oracle::compare_with_analytic(report);
  if (!a.out_path.empty()) {
    std::ofstream f(a.out_path);
    if (!f) throw InvalidInput("cannot open " + a.out_path + " for writing");
    report.write_jsonl(f);
  }
  const bool pass = report.mismatches.empty();
  Out out;
  out.payload["p"] = a.p;
  out.payload["range"] = a.range;
  out.payload["pairs"] = report.total_pairs();
  out.payload["mismatches"] = report.mismatches.size();
  out.payload["status"] = pass ? "pass" : "fail";
  out.human = "p=" + std::to_string(a.p) + " range=" + std::to_string(a.range) +
              " pairs=" + std::to_string(report.total_pairs()) +
              " mismatches=" + std::to_string(report.mismatches.size()) +
              (pass ? " PASS" : " FAIL");
  if (!pass) {
    ordered_json arr = ordered_json::array();
    for (size_t i = 0; i < report.mismatches.size() && i < 5; ++i) {
      const oracle::Mismatch& m = report.mismatches[i];
      ordered_json one;
      one["y"] = m.y;
      one["brute"] = m.brute;
      one["analytic"] = m.analytic;
      arr.push_back(std::move(one));
      out.human += "\ny=" + std::to_string(m.y);
    }
    out.payload["first_mismatches"] = std::move(arr);
    exit_code = 4;
  }
  return out;
}

Out do_verify_inc(const Args& a, int& exit_code) {
  Prime p(a.p);
  ParsedValue v = parse_input(a.value, a.p);
  if (!v.plain) throw InvalidInput("verify-inc takes the exponent ell itself");
  uint64_t terms = a.terms;
  if (terms == 0) terms = 4 * a.p + mod_floored(p, *v.plain);  // default window
  oracle::IncCheckReport r = oracle::check_inc_prediction(p, *v.plain, terms);
  Out out;
  out.payload["p"] = a.p;
  out.payload["ell"] = v.plain->to_decimal();
  out.payload["terms"] = terms;
  out.payload["pass"] = r.pass;
  if (r.pass) {
    out.human = "PASS";
  } else {
    out.payload["first_divergence"] = r.first_divergence;
    out.payload["predicted"] = r.predicted;
    out.payload["simulated"] = r.simulated;
    out.human = "FAIL at index " + std::to_string(r.first_divergence);
    out.human += "\npredicted:";
    for (int64_t t : r.predicted) out.human += ' ' + std::to_string(t);
    out.human += "\nsimulated:";
    for (int64_t t : r.simulated) out.human += ' ' + std::to_string(t);
    exit_code = 4;
  }
  return out;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"arithmetic partial derivative toolkit", "apd"};
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));
  bool json = false;
  app.add_flag("--json", json, "emit the JSON payload instead of text");

  Args a;

  CLI::App* c_dp = app.add_subcommand("dp", "partial derivative D_p(x)");
  c_dp->add_option("--p", a.p, "prime")->required();
  c_dp->add_option("x", a.value, "integer or a*p^(b*p^k)")->required();

  CLI::App* c_d = app.add_subcommand("d", "full arithmetic derivative D(x)");
  c_d->add_option("x", a.value)->required();

  CLI::App* c_seq = app.add_subcommand("ord-seq", "ord_p sequence of the D_p orbit");
  c_seq->add_option("--p", a.p)->required();
  c_seq->add_option("--terms", a.terms, "sequence length")->check(CLI::PositiveNumber);
  c_seq->add_option("x", a.value)->required();

  CLI::App* c_inc = app.add_subcommand("inc-profile", "predicted inc_p structure for ell >= p");
  c_inc->add_option("--p", a.p)->required();
  c_inc->add_option("ell", a.value)->required();

  CLI::App* c_per = app.add_subcommand("period", "eventual period of the ord_p sequence");
  c_per->add_option("--p", a.p)->required();
  c_per->add_option("x", a.value)->required();

  CLI::App* c_cls = app.add_subcommand("classify", "orbit trichotomy: zero / fixed point / divergent");
  c_cls->add_option("--p", a.p)->required();
  c_cls->add_option("x", a.value)->required();

  CLI::App* c_rev = app.add_subcommand("reverse", "exponent with prescribed inc_p shape");
  c_rev->add_option("--p", a.p)->required();
  c_rev->add_option("i", a.tuple, "i_0 .. i_N, each in [0, p-1]")->required();

  CLI::App* c_anti = app.add_subcommand("anti", "all integral anti-partial derivatives");
  c_anti->add_option("--p", a.p)->required();
  c_anti->add_option("y", a.value)->required();

  CLI::App* c_cnt = app.add_subcommand("count-anti", "number of integral anti-partial derivatives");
  c_cnt->add_option("--p", a.p)->required();
  c_cnt->add_option("y", a.value)->required();

  CLI::App* c_cntq = app.add_subcommand("count-anti-rational",
                                        "number of rational anti-partial derivatives");
  c_cntq->add_option("--p", a.p)->required();
  c_cntq->add_option("y", a.value)->required();

  CLI::App* c_con = app.add_subcommand("construct", "integer whose D_p has exactly n preimages");
  c_con->add_option("--p", a.p)->required();
  c_con->add_option("--n", a.n, "required preimage count")->required();
  CLI::Option* opt_k0 = c_con->add_option("--k0", a.k0, "0 or p + p^2 + ... + p^m");
  CLI::Option* opt_m = c_con->add_option("--m", a.m, "derive k0 from m (m >= 2)");
  opt_k0->excludes(opt_m);

  CLI::App* c_vs = app.add_subcommand("verify-sweep",
                                      "brute-force inversion vs analytic enumeration");
  c_vs->add_option("--p", a.p)->required();
  c_vs->add_option("--range", a.range, "check every |y| <= range")->required();
  c_vs->add_option("--jobs", a.jobs, "parallel workers");
  c_vs->add_option("--out", a.out_path, "write the sweep report as JSON lines");

  CLI::App* c_vi = app.add_subcommand("verify-inc", "predicted vs simulated inc_p sequence");
  c_vi->add_option("--p", a.p)->required();
  c_vi->add_option("--terms", a.terms, "0 = auto (4p + prefix)");
  c_vi->add_option("ell", a.value)->required();

  app.require_subcommand(1);

  CommandResult result;
  try {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("apd");
    for (const std::string& s : args) argv.push_back(s.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (c_vi->parsed() && c_vi->count("--terms") == 0) a.terms = 0;

    Out out;
    if (c_dp->parsed()) out = do_dp(a);
    else if (c_d->parsed()) out = do_d(a);
    else if (c_seq->parsed()) out = do_ord_seq(a);
    else if (c_inc->parsed()) out = do_inc_profile(a);
    else if (c_per->parsed()) out = do_period(a);
    else if (c_cls->parsed()) out = do_classify(a);
    else if (c_rev->parsed()) out = do_reverse(a);
    else if (c_anti->parsed()) out = do_anti(a);
    else if (c_cnt->parsed()) out = do_count_anti(a);
    else if (c_cntq->parsed()) out = do_count_anti_rational(a);
    else if (c_con->parsed()) out = do_construct(a, opt_m->count() > 0);
    else if (c_vs->parsed()) out = do_verify_sweep(a, result.exit_code);
    else if (c_vi->parsed()) out = do_verify_inc(a, result.exit_code);

    result.human = std::move(out.human);
    result.payload = out.payload.dump();
  } catch (const CLI::CallForHelp&) {
    result.human = app.help();
    result.payload = "{}";
  } catch (const CLI::CallForVersion&) {
    result.human = kVersion;
    result.payload = std::string("{\"version\":\"") + kVersion + "\"}";
  } catch (const CLI::ParseError& e) {
    result.exit_code = 2;
    result.human = std::string("error: ") + e.what();
    result.payload = ordered_json{{"error", e.what()}, {"code", 2}}.dump();
  } catch (const TooLarge& e) {
    result.exit_code = 3;
    result.human = std::string("error: ") + e.what();
    result.payload = ordered_json{{"error", e.what()}, {"code", 3}}.dump();
  } catch (const VerificationFailure& e) {
    result.exit_code = 4;
    result.human = std::string("error: ") + e.what();
    result.payload = ordered_json{{"error", e.what()}, {"code", 4}}.dump();
  } catch (const std::exception& e) {  // InvalidInput, EmptySet, InfiniteSet, ...
    result.exit_code = 2;
    result.human = std::string("error: ") + e.what();
    result.payload = ordered_json{{"error", e.what()}, {"code", 2}}.dump();
  }
  result.json_requested = json;
  return result;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  CommandResult r = run(args);
  std::ostream& os = r.exit_code == 0 ? std::cout : std::cerr;
  os << r.output() << '\n';
  return r.exit_code;
}

}  // namespace apd::cli
