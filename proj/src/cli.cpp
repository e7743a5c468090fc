#include "lambdalab/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "lambdalab/error.hpp"
#include "lambdalab/io.hpp"
#include "lambdalab/primes.hpp"

namespace lambdalab::cli {

namespace {

using io::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

long parse_long(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(std::string(what) + " must be an integer, got '" + s + "'");
}

void apply_config_file(Config& cfg, const std::string& path) {
  const json j = read_json(path);
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  try {
    if (j.contains("primes_upto")) cfg.primes_upto = io::integer_from_json(j.at("primes_upto")).get_si();
    if (j.contains("search_bound")) cfg.search_bound = static_cast<int>(io::integer_from_json(j.at("search_bound")).get_si());
    if (j.contains("universal_cap")) {
      const json& c = j.at("universal_cap");
      if (c.contains("i")) cfg.universal_cap.i = c.at("i").get<int>();
      if (c.contains("ij")) cfg.universal_cap.ij = c.at("ij").get<int>();
    }
    if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
}

struct Context {
  Config cfg;
  std::ostream& out;

  bool json_out() const { return cfg.output == "json"; }
  void emit(const json& j) const { out << j.dump(2) << "\n"; }

  AdamsFamily family(const std::string& path) const { return io::family_from_json(read_json(path), cfg.primes_upto); }
};

std::string join(const std::vector<long>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

std::string sigma_text(const Automorphism& s) { return s.as_poly().to_string(); }

int cmd_validate(const Context& ctx, const std::string& path) {
  const ValidationReport r = validate(ctx.family(path));
  if (ctx.json_out()) {
    ctx.emit(io::report_to_json(r));
  } else {
    ctx.out << (r.ok() ? "valid" : "invalid") << "\n";
    for (const auto& f : r.commute_failures)
      ctx.out << "commute p=" << f.p << " q=" << f.q << " var=" << f.var << "\n";
    for (const auto& f : r.frobenius_failures) ctx.out << "frobenius p=" << f.p << " var=" << f.var << "\n";
    ctx.out << "primes: " << join(r.primes) << "\n";
  }
  return r.ok() ? kTrue : kFalse;
}

int cmd_iso(const Context& ctx, const std::string& a, const std::string& b) {
  const IsoResult r = iso_solve(ctx.family(a), ctx.family(b), ctx.cfg.search_bound);
  if (ctx.json_out()) {
    ctx.emit(io::iso_result_to_json(r));
  } else {
    ctx.out << io::verdict_name(r.verdict) << "\n";
    if (r.sigma) ctx.out << "sigma: " << sigma_text(*r.sigma) << "\n";
    for (const auto& w : r.witnesses)
      ctx.out << "obstruction: degree " << w.degree << ", p = " << w.prime << ", u = " << w.u << ": " << w.congruence
              << "\n";
    ctx.out << "method: " << r.method << "\n";
  }
  switch (r.verdict) {
    case Verdict::Isomorphic:
      return kTrue;
    case Verdict::NotIsomorphic:
      return kFalse;
    default:
      return kUnknown;
  }
}

json class_n3_json(const NormalFormN3& nf) {
  if (const auto* q = std::get_if<QuadraticClassN3>(&nf)) {
    json c = json::object();
    for (const auto& [p, v] : q->c) c[std::to_string(p)] = v.get_str();
    return {{"type", "quadratic"}, {"c", c}};
  }
  const auto& d = std::get<ClassDataN3>(nf);
  json b = json::object();
  for (const auto& [p, v] : d.b) b[std::to_string(p)] = v.get_str();
  return {{"type", "linear"}, {"b", b}, {"G", d.G.get_str()}, {"condB_primes", d.condB_primes}, {"k", d.k.get_str()}};
}

std::string class_n3_text(const NormalFormN3& nf) {
  if (const auto* q = std::get_if<QuadraticClassN3>(&nf)) {
    std::ostringstream os;
    os << "S((c_p)) with c_2 = " << q->c.begin()->second.get_str();
    return os.str();
  }
  const auto& d = std::get<ClassDataN3>(nf);
  return "S((b_p), k) with b_2 = " + d.b.begin()->second.get_str() + ", G = " + d.G.get_str() + ", k = " + d.k.get_str();
}

int cmd_normalize(const Context& ctx, const std::string& path) {
  const AdamsFamily f = ctx.family(path);
  if (!f.shape().is_univariate() || f.shape().unbounded(0))
    throw ArityMismatch("normalize works on Z[x]/(x^n)");
  const int n = f.shape().bound(0);
  const int filt = f.shape().filtration();
  json j;
  std::string text;
  if (n == 2) {
    json b = json::object();
    for (const auto& [p, v] : normal_form_n2(f)) b[std::to_string(p)] = v.get_str();
    j = {{"b", b}};
    text = "b_2 = " + f.coeff(2, 1).get_str();
  } else if (n == 3) {
    const NormalFormN3 nf = normal_form_n3(f);
    const AdamsFamily rep = representative(nf, filt);
    const auto sigma = iso_witness_n3(f, rep);
    if (!sigma) throw InternalInconsistency("input is not isomorphic to its normal form");
    j = {{"class", class_n3_json(nf)}, {"representative", io::family_to_json(rep)},
         {"sigma", io::automorphism_to_json(*sigma)}};
    text = class_n3_text(nf) + "\nsigma: " + sigma_text(*sigma);
  } else if (n == 4) {
    const ClassN4 c = classify_n4(f);
    if (c.regime == N4Regime::Case1) {
      const Automorphism sigma = normalize_n4_case1(f);
      j = {{"class", {{"type", "chern"}}},
           {"representative", io::family_to_json(chern_family(f.shape(), f.primes()))},
           {"sigma", io::automorphism_to_json(sigma)}};
      text = "Chern class\nsigma: " + sigma_text(sigma);
    } else if (c.regime == N4Regime::Case2) {
      const AdamsFamily rep = case2_family(*c.case2, f.primes(), filt);
      const IsoResult r = iso_solve(f, rep, ctx.cfg.search_bound);
      if (r.verdict != Verdict::Isomorphic) throw InternalInconsistency("input is not isomorphic to S(k, d_2)");
      j = {{"class", {{"type", "case2"}, {"k", c.case2->k}, {"d2", c.case2->d2.get_str()}}},
           {"representative", io::family_to_json(rep)},
           {"sigma", io::automorphism_to_json(*r.sigma)}};
      text = "S(" + std::to_string(c.case2->k) + ", " + c.case2->d2.get_str() + ")\nsigma: " + sigma_text(*r.sigma);
    } else {
      throw WrongRegime("normal forms on Z[x]/(x^4) exist for b_p = p and b_p = p^2 only");
    }
  } else {
    throw WrongRegime("normal forms are available for n = 2, 3, 4");
  }
  if (ctx.json_out())
    ctx.emit(j);
  else
    ctx.out << text << "\n";
  return kTrue;
}

int cmd_classify(const Context& ctx, const std::string& path) {
  const AdamsFamily f = ctx.family(path);
  if (!f.shape().is_univariate() || f.shape().unbounded(0)) throw ArityMismatch("classify works on Z[x]/(x^n)");
  const int n = f.shape().bound(0);
  RealizabilityVerdict v;
  json cls;
  if (n == 2) {
    const LinearSeq b = normal_form_n2(f);
    v.r = uniform_power(b);
    v.passes = v.r.has_value();
    v.note = v.passes ? "b_p = p^r" : "no uniform power";
    cls = {{"type", "linear"}};
  } else if (n == 3) {
    const NormalFormN3 nf = normal_form_n3(f);
    v = realizable_filter_n3(nf);
    cls = class_n3_json(nf);
  } else if (n == 4) {
    const ClassN4 c = classify_n4(f);
    v = realizable_filter_n4(c);
    static const char* names[] = {"case1", "case2", "case4", "general"};
    cls = {{"type", names[static_cast<int>(c.regime)]}};
    if (c.case2) {
      cls["k"] = c.case2->k;
      cls["d2"] = c.case2->d2.get_str();
    }
  } else {
    throw WrongRegime("classification is available for n = 2, 3, 4");
  }
  if (ctx.json_out()) {
    json j = {{"class", cls}, {"passes_filter", v.passes}, {"known_realized", v.known_realized}, {"note", v.note}};
    if (v.r) j["r"] = *v.r;
    ctx.emit(j);
  } else {
    ctx.out << (v.passes ? "passes" : "fails") << " realizability filter";
    if (v.r) ctx.out << " (r = " << *v.r << ")";
    ctx.out << (v.known_realized ? ", known realized" : "") << ": " << v.note << "\n";
  }
  return v.passes ? kTrue : kFalse;
}

LinearSeq linear_from_flags(const Context& ctx, const std::string& rule, const std::string& den) {
  if (rule.empty()) throw InvalidArgument("--b is required");
  return linear_sequence(CoeffRule::parse(rule, Integer(parse_long(den, "--den"))), primes_upto(ctx.cfg.primes_upto));
}

int cmd_count(const Context& ctx, int n, const std::string& rule, const std::string& den) {
  if (n != 3) throw InvalidArgument("count is defined for --n 3");
  const Integer c = count_n3(linear_from_flags(ctx, rule, den));
  if (ctx.json_out())
    ctx.emit({{"count", c.get_str()}, {"primes", primes_upto(ctx.cfg.primes_upto)}});
  else
    ctx.out << c.get_str() << "\n";
  return kTrue;
}

int cmd_enumerate(const Context& ctx, int n, int regime, const std::string& rule, const std::string& den,
                  const std::string& out_dir) {
  std::vector<AdamsFamily> fams;
  if (n == 3) {
    const auto b_rule = CoeffRule::parse(rule.empty() ? throw InvalidArgument("--b is required") : rule,
                                         Integer(parse_long(den, "--den")));
    for (const auto& c : enumerate_n3(linear_sequence(b_rule, primes_upto(ctx.cfg.primes_upto))))
      fams.push_back(representative(c, 1, b_rule));
  } else if (n == 4 && regime == 2) {
    for (const auto& c : enumerate_n4_case2()) fams.push_back(case2_family(c, primes_upto(ctx.cfg.primes_upto)));
  } else {
    throw InvalidArgument("enumerate supports --n 3 --b RULE and --n 4 --case 2");
  }

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    for (std::size_t i = 0; i < fams.size(); ++i) {
      std::ostringstream name;
      name << "class_" << std::setw(3) << std::setfill('0') << (i + 1) << ".json";
      std::ofstream f(std::filesystem::path(out_dir) / name.str());
      f << io::family_to_json(fams[i]).dump(2) << "\n";
    }
    ctx.out << fams.size() << " families written to " << out_dir << "\n";
    return kTrue;
  }
  json arr = json::array();
  for (const auto& f : fams) arr.push_back(io::family_to_json(f));
  if (ctx.json_out())
    ctx.emit(arr);
  else
    ctx.out << fams.size() << " families\n" << arr.dump(2) << "\n";
  return kTrue;
}

int cmd_conjc(const Context& ctx, const std::vector<std::string>& files) {
  const AdamsFamily r = ctx.family(files[0]);
  const AdamsFamily s = ctx.family(files[1]);
  const Automorphism sigma = io::automorphism_from_json(read_json(files[2]), r.shape());
  const AdamsFamily rt = ctx.family(files[3]);
  const ConjcReport rep = conjc_check(r, s, sigma, rt);
  // Below p = n the congruence is only claimed for n <= 5.
  const bool asserted_ok = rep.high_ok() && (rep.n > 5 || rep.low_ok());
  if (ctx.json_out()) {
    json j = {{"n", rep.n},
              {"primes", rep.primes},
              {"high_ok", rep.high_ok()},
              {"low_ok", rep.low_ok()},
              {"high_failures", rep.high_failures},
              {"low_failures", rep.low_failures}};
    if (rep.x6_coeff_mod2) j["x6_coeff_mod2"] = *rep.x6_coeff_mod2;
    if (rep.b3_parity) j["b3_parity"] = *rep.b3_parity;
    ctx.emit(j);
  } else {
    ctx.out << "p >= " << rep.n << ": " << (rep.high_ok() ? "pass" : "FAIL " + join(rep.high_failures)) << "\n";
    ctx.out << "p < " << rep.n << ": " << (rep.low_ok() ? "pass" : "FAIL " + join(rep.low_failures)) << "\n";
    if (rep.x6_coeff_mod2)
      ctx.out << "x^6 coefficient of psi^2 mod 2: " << *rep.x6_coeff_mod2 << ", b_3 mod 2: " << *rep.b3_parity << "\n";
  }
  return asserted_ok ? kTrue : kFalse;
}

int cmd_universal(const Context& ctx, const std::string& kind, const std::vector<int>& idx) {
  SymPoly poly({});
  auto need = [&](std::size_t k) {
    if (idx.size() != k) throw InvalidArgument(kind + " takes " + std::to_string(k) + " index argument(s)");
  };
  if (kind == "Q") {
    need(1);
    poly = newton_Q(idx[0]);
  } else if (kind == "P") {
    need(1);
    poly = product_P(idx[0], ctx.cfg.universal_cap);
  } else if (kind == "Pij") {
    need(2);
    poly = composite_P(idx[0], idx[1], ctx.cfg.universal_cap);
  } else {
    throw InvalidArgument("universal kind must be Q, P or Pij");
  }
  if (ctx.json_out())
    ctx.emit(io::sympoly_to_json(poly));
  else
    ctx.out << poly.to_string() << "\n";
  return kTrue;
}

int cmd_existence(const Context& ctx, const std::string& path) {
  const json j = read_json(path);
  const RingShape shape = io::shape_from_json(j.at("ring"));
  std::vector<long> primes;
  if (j.contains("primes"))
    primes = j.at("primes").get<std::vector<long>>();
  else
    primes = primes_upto(j.contains("primes_upto") ? j.at("primes_upto").get<long>() : ctx.cfg.primes_upto);
  std::map<std::pair<long, int>, Integer> b;
  for (const auto& e : j.at("b"))
    b[{e.at("p").get<long>(), e.contains("var") ? e.at("var").get<int>() : 0}] = io::integer_from_json(e.at("value"));
  const AdamsFamily fam = construct_existence_family(shape, b, primes);
  const ValidationReport rep = validate(fam);
  if (ctx.json_out())
    ctx.emit({{"family", io::family_to_json(fam)}, {"report", io::report_to_json(rep)}});
  else
    ctx.out << (rep.ok() ? "valid" : "invalid") << "\n" << io::family_to_json(fam).dump(2) << "\n";
  return rep.ok() ? kTrue : kFalse;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adams operations on truncated polynomial rings", "lambdalab"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<long> primes_flag;
  std::optional<int> bound_flag, cap_i, cap_ij;
  std::string output;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--primes-upto", primes_flag, "active primes are those <= N (>= 7)");
  app.add_option("--search-bound", bound_flag, "range of free automorphism coefficients");
  app.add_option("--cap-i", cap_i, "largest i for P_i and P_{i,j}");
  app.add_option("--cap-ij", cap_ij, "largest i*j for P_{i,j}");
  app.add_option("--output", output, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::string file_a, file_b, rule, den = "1", out_dir, kind;
  int n = 0, regime = 0;
  std::vector<std::string> conjc_files;
  std::vector<int> indices;

  auto* validate_cmd = app.add_subcommand("validate", "check commutation and Frobenius congruences");
  validate_cmd->add_option("family", file_a)->required();
  auto* iso_cmd = app.add_subcommand("iso", "decide isomorphism of two families");
  iso_cmd->add_option("first", file_a)->required();
  iso_cmd->add_option("second", file_b)->required();
  auto* normalize_cmd = app.add_subcommand("normalize", "normal form on Z[x]/(x^n), n <= 4");
  normalize_cmd->add_option("family", file_a)->required();
  auto* classify_cmd = app.add_subcommand("classify", "class and realizability filter");
  classify_cmd->add_option("family", file_a)->required();
  auto* enumerate_cmd = app.add_subcommand("enumerate", "list class representatives");
  enumerate_cmd->add_option("--n", n)->required();
  enumerate_cmd->add_option("--b", rule, "linear coefficient rule in p");
  enumerate_cmd->add_option("--den", den, "denominator of the rule");
  enumerate_cmd->add_option("--case", regime);
  enumerate_cmd->add_option("--out-dir", out_dir, "write one family file per class");
  auto* count_cmd = app.add_subcommand("count", "number of classes with given linear part");
  count_cmd->add_option("--n", n)->required();
  count_cmd->add_option("--b", rule)->required();
  count_cmd->add_option("--den", den);
  auto* conjc_cmd = app.add_subcommand("conjc", "conjugate an extension and test Frobenius");
  conjc_cmd->add_option("files", conjc_files, "R S SIGMA R_TILDE")->required()->expected(4);
  auto* universal_cmd = app.add_subcommand("universal", "emit Q_k, P_i or P_{i,j}");
  universal_cmd->add_option("kind", kind, "Q, P or Pij")->required();
  universal_cmd->add_option("indices", indices)->required()->expected(1, 2);
  auto* existence_cmd = app.add_subcommand("existence", "build a family from a b-table");
  existence_cmd->add_option("spec", file_a)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kTrue;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInputError;
  }

  try {
    Context ctx{Config{}, out};
    if (!config_path.empty()) apply_config_file(ctx.cfg, config_path);
    if (const char* env = std::getenv("LAMBDA_LAB_PRIMES")) ctx.cfg.primes_upto = parse_long(env, "LAMBDA_LAB_PRIMES");
    if (primes_flag) ctx.cfg.primes_upto = *primes_flag;
    if (bound_flag) ctx.cfg.search_bound = *bound_flag;
    if (cap_i) ctx.cfg.universal_cap.i = *cap_i;
    if (cap_ij) ctx.cfg.universal_cap.ij = *cap_ij;
    if (!output.empty()) ctx.cfg.output = output;
    if (ctx.cfg.primes_upto < 7) throw InvalidArgument("primes_upto must be >= 7");
    if (ctx.cfg.search_bound < 0) throw InvalidArgument("search_bound must be >= 0");
    if (ctx.cfg.output != "text" && ctx.cfg.output != "json") throw InvalidArgument("output must be text or json");

    if (validate_cmd->parsed()) return cmd_validate(ctx, file_a);
    if (iso_cmd->parsed()) return cmd_iso(ctx, file_a, file_b);
    if (normalize_cmd->parsed()) return cmd_normalize(ctx, file_a);
    if (classify_cmd->parsed()) return cmd_classify(ctx, file_a);
    if (enumerate_cmd->parsed()) return cmd_enumerate(ctx, n, regime, rule, den, out_dir);
    if (count_cmd->parsed()) return cmd_count(ctx, n, rule, den);
    if (conjc_cmd->parsed()) return cmd_conjc(ctx, conjc_files);
    if (universal_cmd->parsed()) return cmd_universal(ctx, kind, indices);
    if (existence_cmd->parsed()) return cmd_existence(ctx, file_a);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    err << "ParseError: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace lambdalab::cli
