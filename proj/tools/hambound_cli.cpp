#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hambound/closed_forms.hpp"
#include "hambound/diagnostics.hpp"
#include "hambound/energy.hpp"
#include "hambound/json_io.hpp"
#include "hambound/oracle.hpp"

namespace {

using nlohmann::json;
using namespace hambound;

long env_prec() {
  const char* env = std::getenv("HAMBOUND_PREC");
  if (!env) return 128;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 16 || v > (1L << 20)) return 128;
  return v;
}

void flat_print(const json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& it : j.items())
      flat_print(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& v : j) flat_print(v, prefix + "[" + std::to_string(i++) + "]");
  } else {
    std::cout << prefix << " = "
              << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const json& j, const std::string& format) {
  if (format == "text")
    flat_print(j, "");
  else
    std::cout << j.dump(2) << "\n";
}

// Shared option bag; each subcommand binds the fields it uses.
struct Args {
  int n = 0;
  int q = 2;
  int k = 0;      // 0 = scan
  int k_max = 0;  // 0 = default (n/2)
  int d = 0, D = 0;
  std::string ell, s, M;
  std::string potential = "invpow:sigma=2";
  int j = -1;
  int j_max = -1;
  bool upper_only = false;
  bool cross_check = false;
  bool improve = false;
  std::string code_file;
  int even_weight = 0;
  long max_points = 4096;
  int max_M = 16;
  std::string verify_path;
  long prec = env_prec();
  std::string format = "json";
};

// "table:@file" loads grid values from JSON:
//   {"attested": bool, "values": [["t", "h(t)"], ...]}  (rationals as strings)
Potential cli_potential(const HammingSpace& space, const std::string& desc) {
  const std::string prefix = "table:@";
  if (desc.rfind(prefix, 0) == 0) {
    std::string path = desc.substr(prefix.size());
    std::ifstream in(path);
    if (!in) throw ParamError("cannot open potential table: " + path);
    json j = json::parse(in);
    std::vector<std::pair<Rat, Rat>> vals;
    for (const auto& pr : j.at("values"))
      vals.emplace_back(parse_rat(pr.at(0).get<std::string>()),
                        parse_rat(pr.at(1).get<std::string>()));
    return table_potential(space, vals, j.value("attested", false));
  }
  return parse_potential(space, desc);
}

// Either (-d, -D) or (--ell, --s); conversion s = 1-2d/n, ell = 1-2D/n.
std::pair<Rat, Rat> resolve_ls(const HammingSpace& space, const Args& a) {
  bool have_dD = a.d > 0 || a.D > 0;
  bool have_ls = !a.ell.empty() || !a.s.empty();
  if (have_dD && have_ls)
    throw ParamError("give either -d/-D or --ell/--s, not both");
  if (have_dD) {
    if (a.d <= 0 || a.D <= 0) throw ParamError("need both -d and -D");
    return ls_of_dD(space, a.d, a.D);
  }
  if (a.ell.empty() || a.s.empty())
    throw ParamError("need --ell and --s (or -d and -D)");
  return {parse_rat(a.ell), parse_rat(a.s)};
}

int run_bound(const Args& a) {
  HammingSpace space(a.n, a.q);
  auto [ell, s] = resolve_ls(space, a);
  if (a.k > 0) {
    emit(render(cardinality_bound(space, ell, s, a.k, a.prec)), a.format);
    return 0;
  }
  int k_max = a.k_max > 0 ? a.k_max : std::max(1, space.n / 2);
  KSelection sel = select_k(space, ell, s, k_max, a.prec);
  if (!sel.best) {
    std::string msg = "no admissible k in 1.." + std::to_string(k_max);
    for (const auto& [kk, why] : sel.rejected)
      msg += "; k=" + std::to_string(kk) + ": " + why;
    throw NoValidK(msg);
  }
  emit(render(sel), a.format);
  return 0;
}

int run_energy(const Args& a) {
  HammingSpace space(a.n, a.q);
  if (a.M.empty()) throw ParamError("energy needs -M");
  Rat M = parse_rat(a.M);
  Rat ell;
  if (a.D > 0 && a.ell.empty())
    ell = space.t_of_distance(a.D);
  else if (!a.ell.empty() && a.D == 0)
    ell = parse_rat(a.ell);
  else
    throw ParamError("energy needs exactly one of --ell, -D");
  Potential h = cli_potential(space, a.potential);
  bool have_s = a.d > 0 || !a.s.empty();
  if (have_s) {
    if (a.d > 0 && !a.s.empty()) throw ParamError("give either -d or --s, not both");
    Rat s = a.d > 0 ? space.t_of_distance(a.d) : parse_rat(a.s);
    if (a.k <= 0) throw ParamError("an explicit s needs -k");
    EnergyReport rep =
        a.upper_only
            ? energy_upper_bound(space, M, ell, s, a.k, h, a.prec, a.cross_check)
            : energy_strip(space, M, ell, s, a.k, h, a.prec);
    emit(render(rep), a.format);
    return 0;
  }
  if (a.upper_only) throw ParamError("--upper-only needs --s/-d and -k");
  emit(render(energy_lower_bound(space, ell, M, h, a.k_max, a.prec)), a.format);
  return 0;
}

int run_distdist(const Args& a) {
  HammingSpace space(a.n, a.q);
  auto [ell, s] = resolve_ls(space, a);
  if (a.k <= 0) throw ParamError("distdist needs -k");
  emit(render(distance_distribution(space, ell, s, a.k, a.prec)), a.format);
  return 0;
}

int run_testfn(const Args& a) {
  HammingSpace space(a.n, a.q);
  if (a.ell.empty()) throw ParamError("testfn needs --ell");
  if (a.k <= 0) throw ParamError("testfn needs -k");
  Rat ell = parse_rat(a.ell);
  Rat s;
  json extra;
  if (!a.M.empty()) {
    if (!a.s.empty()) throw ParamError("give either --s or -M, not both");
    SSolve sol = solve_cardinality_for_s(space, ell, a.k, parse_rat(a.M), a.prec);
    s = sol.s;
    extra["solved_from_M"] = a.M;
    extra["s_solution"] = render_iv(sol.enclosure);
    extra["s_exact"] = sol.exact;
  } else if (!a.s.empty()) {
    s = parse_rat(a.s);
  } else {
    throw ParamError("testfn needs --s or -M");
  }
  if (a.j >= 0) {
    BoundReport rep = cardinality_bound(space, ell, s, a.k, a.prec);
    TestFunctionValue tv = test_function_R(space, ell, s, a.k, a.j, a.prec);
    json out;
    out["j"] = tv.j;
    out["value"] = render_iv(tv.value);
    out["direct"] = render_iv(tv.direct);
    out["power_sum"] = render_iv(tv.power_sum);
    out["L"] = render_rat(rep.L);
    for (const auto& it : extra.items()) out[it.key()] = it.value();
    if (a.improve) {
      ImprovingPolynomial ip = improving_polynomial(space, ell, s, a.k, a.j, a.prec);
      out["improving"] = render(ip);
    }
    emit(out, a.format);
    return 0;
  }
  int j_max = a.j_max > 0 ? a.j_max : 2 * a.k + 10;
  TestFunctionReport rep = scan_test_functions(space, ell, s, a.k, j_max, a.prec);
  json out = render(rep);
  for (const auto& it : extra.items()) out[it.key()] = it.value();
  if (a.improve && rep.first_negative) {
    ImprovingPolynomial ip =
        improving_polynomial(space, ell, s, a.k, *rep.first_negative, a.prec);
    out["improving"] = render(ip);
  }
  emit(out, a.format);
  return 0;
}

int run_refine(const Args& a) {
  HammingSpace space(a.n, a.q);
  auto [ell, s] = resolve_ls(space, a);
  if (a.k <= 0) throw ParamError("refine needs -k");
  Potential h = cli_potential(space, a.potential);
  emit(render(refine_polynomials(space, ell, s, a.k, h, a.prec)), a.format);
  return 0;
}

Code load_code(const Args& a) {
  if (a.even_weight > 0) {
    if (!a.code_file.empty())
      throw ParamError("give either --even-weight or --code, not both");
    return even_weight_code(a.even_weight);
  }
  if (a.code_file.empty()) throw ParamError("need --even-weight or --code FILE");
  if (a.n <= 0) throw ParamError("--code needs -n (and -q)");
  HammingSpace space(a.n, a.q);
  std::ifstream in(a.code_file);
  if (!in) throw ParamError("cannot open code file: " + a.code_file);
  Code c{space, {}};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (static_cast<int>(line.size()) != space.n)
      throw ParamError("code word has wrong length: " + line);
    std::uint32_t w = 0, scale = 1;
    for (char ch : line) {
      int digit = ch - '0';
      if (digit < 0 || digit >= space.q)
        throw ParamError("code word digit out of range: " + line);
      w += static_cast<std::uint32_t>(digit) * scale;
      scale *= static_cast<std::uint32_t>(space.q);
    }
    c.words.push_back(w);
  }
  if (c.words.empty()) throw ParamError("code file is empty");
  return c;
}

int run_oracle_maxcode(const Args& a) {
  HammingSpace space(a.n, a.q);
  OracleBudget budget;
  budget.max_points = a.max_points;
  emit(render(exhaustive_max_code(space, a.d, a.D, budget)), a.format);
  return 0;
}

int run_oracle_energy(const Args& a) {
  HammingSpace space(a.n, a.q);
  if (a.M.empty()) throw ParamError("oracle energy needs -M");
  Rat M = parse_rat(a.M);
  if (!is_integer(M) || M < 2) throw ParamError("oracle energy needs integer M >= 2");
  Potential h = cli_potential(space, a.potential);
  OracleBudget budget;
  budget.max_points = a.max_points;
  budget.max_M = a.max_M;
  emit(render(exhaustive_energy_extrema(space, static_cast<int>(M.get_num().get_si()),
                                        a.d, a.D, h, a.prec, budget)),
       a.format);
  return 0;
}

int run_oracle_strength(const Args& a) {
  Code c = load_code(a);
  json out;
  out["space"] = {{"n", c.space.n}, {"q", c.space.q}};
  out["size"] = c.words.size();
  out["strength"] = design_strength(c);
  json avg = json::array(), dual = json::array();
  for (const Rat& b : average_distance_distribution(c)) avg.push_back(render_rat(b));
  for (const Rat& b : macwilliams(c)) dual.push_back(render_rat(b));
  out["average_distribution"] = avg;
  out["dual_distribution"] = dual;
  emit(out, a.format);
  return 0;
}

// Binary piecewise system at ell = (2-n)/n: one CSV row per (grid s, piece).
int run_table_csv(const Args& a) {
  const int n = a.n;
  if (n < 4) throw ParamError("table needs -n >= 4");
  HammingSpace space(n, 2);
  const long N = n;
  Rat ell = rat(2 - n, n);
  std::cout << "# q=2, ell=" << rat_to_string(ell) << ", rows over s in T_n\n";
  std::cout << "# lev1: (s-1)/s on [" << rat_to_string(ell) << ", "
            << rat_to_string(rat(-1, n)) << "]\n";
  std::cout << "# L2: 2(1-s)(n-1)/(1-(n-2)s) on (" << rat_to_string(rat(-1, n))
            << ", " << rat_to_string(rat(2, N * (n - 3))) << "]\n";
  std::cout << "# lev2: n(1-s)(2+(n+1)s)/(1-ns^2) on (0, (sqrt(n-1)-1)/n]\n";
  if (n >= 6) {
    std::cout << "# L4: 2(1-s)(A s + B)/(C + D s - E s^2) on "
              << "((sqrt(n-1)-1)/n, (2+sqrt(n^3-12n^2+41n-26))/(n(n-5))]\n";
    std::cout << "#   A = n(n^2-3n-2) = " << N * (N * N - 3 * N - 2)
              << ", B = n^2-7n+2 = " << N * N - 7 * N + 2
              << ", C = n-6 = " << N - 6 << ", D = 2(n-2) = " << 2 * (N - 2)
              << ", E = n(n-4) = " << N * (N - 4) << "\n";
  }
  std::cout << "s,d,piece,bound\n";
  auto row = [&](const Rat& s, int d, const char* piece, const Rat& value) {
    std::cout << rat_to_string(s) << "," << d << "," << piece << ","
              << rat_to_string(value) << "\n";
  };
  for (int i = 0; i < n; ++i) {
    Rat s = space.grid_point(i);
    int d = n - i;
    if (s >= ell && s <= rat(-1, n)) row(s, d, "lev1", lev_first_bound(s));
    if (in_l2_window_binary(n, s)) row(s, d, "L2", l2_closed_binary(n, s));
    if (sgn(s) > 0) {
      Rat u = rat(N) * s + 1;  // s <= (sqrt(n-1)-1)/n  <=>  (ns+1)^2 <= n-1
      if (u * u <= rat(N - 1)) row(s, d, "lev2", lev_second_bound(n, s));
    }
    if (n >= 6 && in_l4_window_binary(n, s)) {
      try {
        row(s, d, "L4", l4_closed_binary(n, s));
      } catch (const ParamError&) {
        // n=6 pole: the denominator vanishes at the window's right endpoint.
        std::cout << rat_to_string(s) << "," << d << ",L4,unbounded\n";
      }
    }
  }
  return 0;
}

int run_verify(const Args& a) {
  std::ifstream in(a.verify_path);
  if (!in) throw ParamError("cannot open corpus: " + a.verify_path);
  json corpus = json::parse(in);
  int failures = 0, total = 0;
  for (const auto& rec : corpus.at("records")) {
    ++total;
    std::string kind = rec.at("kind").get<std::string>();
    int n = rec.at("n").get<int>();
    int q = rec.at("q").get<int>();
    int k = rec.at("k").get<int>();
    std::string ell_s = rec.at("ell").get<std::string>();
    std::string s_s = rec.at("s").get<std::string>();
    std::string label = kind + " q=" + std::to_string(q) + " n=" + std::to_string(n) +
                        " ell=" + ell_s + " s=" + s_s + " k=" + std::to_string(k);
    std::string problem;
    try {
      HammingSpace space(n, q);
      Rat ell = parse_rat(ell_s), s = parse_rat(s_s);
      if (kind == "L") {
        Rat expect = parse_rat(rec.at("expect").get<std::string>());
        BoundReport rep = cardinality_bound(space, ell, s, k, a.prec);
        if (rep.L != expect)
          problem = "got " + render_rat(rep.L) + ", expected " + render_rat(expect);
      } else if (kind == "dd") {
        DistanceDistribution dd = distance_distribution(space, ell, s, k, a.prec);
        const auto& expect = rec.at("expect");
        if (expect.size() != dd.counts_exact.size()) {
          problem = "distribution has " + std::to_string(dd.counts_exact.size()) +
                    " entries, expected " + std::to_string(expect.size());
        } else {
          for (std::size_t i = 0; i < dd.counts_exact.size(); ++i) {
            Rat want = parse_rat(expect.at(i).get<std::string>());
            if (!dd.counts_exact[i] || *dd.counts_exact[i] != want) {
              problem = "count " + std::to_string(i) + " is " +
                        (dd.counts_exact[i] ? render_rat(*dd.counts_exact[i])
                                            : std::string("inexact")) +
                        ", expected " + render_rat(want);
              break;
            }
          }
        }
      } else {
        problem = "unknown record kind";
      }
    } catch (const std::exception& e) {
      problem = e.what();
    }
    if (problem.empty()) {
      std::cout << "ok   " << label << "\n";
    } else {
      std::cout << "FAIL " << label << ": " << problem << "\n";
      ++failures;
    }
  }
  std::cout << (total - failures) << "/" << total << " records verified\n";
  if (failures) throw InternalError(std::to_string(failures) + " corpus records failed");
  return 0;
}

void add_space_opts(CLI::App* cmd, Args& a, bool need_n = true) {
  auto* n = cmd->add_option("-n,--n", a.n, "word length");
  if (need_n) n->required();
  cmd->add_option("-q,--q", a.q, "alphabet size")->capture_default_str();
}

void add_window_opts(CLI::App* cmd, Args& a) {
  cmd->add_option("-d,--min-distance", a.d, "minimum distance (s = 1-2d/n)");
  cmd->add_option("-D,--max-distance", a.D, "maximum distance (ell = 1-2D/n)");
  cmd->add_option("--ell", a.ell, "inner-product lower end, rational p/q");
  cmd->add_option("--s", a.s, "inner-product upper end, rational p/q");
}

}  // namespace

int main(int argc, char** argv) {
  Args a;
  CLI::App app{"Certified cardinality and energy bounds for codes in Hamming space"};
  app.require_subcommand(1);
  app.fallthrough();  // let --prec/--format appear after the subcommand too
  app.add_option("--prec", a.prec, "working precision in bits (env HAMBOUND_PREC)")
      ->capture_default_str();
  app.add_option("--format", a.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  auto* bound = app.add_subcommand("bound", "cardinality bound with validity report");
  add_space_opts(bound, a);
  add_window_opts(bound, a);
  bound->add_option("-k,--k", a.k, "degree parameter (0 = scan and pick best)");
  bound->add_option("--kmax", a.k_max, "scan limit when -k is 0");

  auto* energy = app.add_subcommand("energy", "certified energy bounds");
  add_space_opts(energy, a);
  add_window_opts(energy, a);
  energy->add_option("-M,--cardinality", a.M, "code size (rational)")->required();
  energy->add_option("-k,--k", a.k, "degree parameter (needed with --s/-d)");
  energy->add_option("--kmax", a.k_max, "scan limit for the lower bound");
  energy->add_option("--potential", a.potential,
                     "invpow:sigma=R | exp:c=R | monomial:m=N | table:@file")
      ->capture_default_str();
  energy->add_flag("--upper-only", a.upper_only, "skip the lower bound");
  energy->add_flag("--cross-check-ell-double", a.cross_check,
                   "also build the variant with ell as a double node");

  auto* distdist = app.add_subcommand(
      "distdist", "distance distribution forced on codes attaining the bound");
  add_space_opts(distdist, a);
  add_window_opts(distdist, a);
  distdist->add_option("-k,--k", a.k, "degree parameter")->required();

  auto* testfn = app.add_subcommand("testfn", "test functions for bound optimality");
  add_space_opts(testfn, a);
  testfn->add_option("--ell", a.ell, "inner-product lower end")->required();
  testfn->add_option("--s", a.s, "inner-product upper end");
  testfn->add_option("-M,--cardinality", a.M, "solve s from this code size instead");
  testfn->add_option("-k,--k", a.k, "degree parameter")->required();
  testfn->add_option("-j,--j", a.j, "single index j (default: scan)");
  testfn->add_option("--jmax", a.j_max, "scan limit (default 2k+10)");
  testfn->add_flag("--improve", a.improve,
                   "construct the improving polynomial at a negative index");

  auto* refine = app.add_subcommand("refine", "grid-node refinement of both bounds");
  add_space_opts(refine, a);
  add_window_opts(refine, a);
  refine->add_option("-k,--k", a.k, "degree parameter")->required();
  refine->add_option("--potential", a.potential,
                     "potential for the energy side")
      ->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "exhaustive small-parameter checks");
  oracle->require_subcommand(1);
  auto* maxcode = oracle->add_subcommand("maxcode", "exact maximum code size");
  add_space_opts(maxcode, a);
  maxcode->add_option("-d,--min-distance", a.d, "minimum distance")->required();
  maxcode->add_option("-D,--max-distance", a.D, "maximum distance")->required();
  maxcode->add_option("--max-points", a.max_points, "budget cap on q^n")
      ->capture_default_str();
  auto* oenergy = oracle->add_subcommand("energy", "exact energy extrema");
  add_space_opts(oenergy, a);
  oenergy->add_option("-d,--min-distance", a.d, "minimum distance")->required();
  oenergy->add_option("-D,--max-distance", a.D, "maximum distance")->required();
  oenergy->add_option("-M,--cardinality", a.M, "code size")->required();
  oenergy->add_option("--potential", a.potential, "potential descriptor")
      ->capture_default_str();
  oenergy->add_option("--max-points", a.max_points, "budget cap on q^n")
      ->capture_default_str();
  oenergy->add_option("--max-M", a.max_M, "budget cap on M")->capture_default_str();
  auto* strength = oracle->add_subcommand("strength",
                                          "design strength and distributions");
  add_space_opts(strength, a, false);
  strength->add_option("--even-weight", a.even_weight,
                       "use the binary even-weight code of this length");
  strength->add_option("--code", a.code_file, "code file, one word per line");

  auto* table = app.add_subcommand(
      "table", "binary piecewise bound table at ell = (2-n)/n, CSV");
  table->add_option("-n,--n", a.n, "word length");
  table->add_option("--verify", a.verify_path, "run a regression corpus instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(bound)) return run_bound(a);
    if (app.got_subcommand(energy)) return run_energy(a);
    if (app.got_subcommand(distdist)) return run_distdist(a);
    if (app.got_subcommand(testfn)) return run_testfn(a);
    if (app.got_subcommand(refine)) return run_refine(a);
    if (app.got_subcommand(oracle)) {
      if (oracle->got_subcommand("maxcode")) return run_oracle_maxcode(a);
      if (oracle->got_subcommand("energy")) return run_oracle_energy(a);
      return run_oracle_strength(a);
    }
    if (app.got_subcommand(table)) {
      if (!a.verify_path.empty()) return run_verify(a);
      return run_table_csv(a);
    }
    return 2;
  } catch (const ParamError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 2;
  } catch (const NoValidK& e) {
    std::cerr << "no valid k: " << e.what() << "\n";
    return 3;
  } catch (const InternalError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 4;
  } catch (const json::exception& e) {
    std::cerr << "input parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
