#pragma once

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nearvec/nearvec.hpp"

namespace nearvec::cli {

using nlohmann::json;

enum ExitCode : int {
  kSuccess = 0,
  kNegative = 1,  // not isomorphic, mismatch, failed verification
  kUsage = 2,
  kBudget = 3,
};

enum class Format { Plain, Json, Csv };

inline json big_to_json(const BigInt& v) {
  if (v >= 0 && v <= UINT64_MAX) return static_cast<std::uint64_t>(v);
  return v.str();
}

inline json elements_json(std::span<const GroupElement> elems) {
  json arr = json::array();
  for (GroupElement e : elems) arr.push_back(e.value);
  return arr;
}

inline std::string group_label(const QuotientGroup& g) {
  const auto& params = g.params();
  return "U(" + std::to_string(params.modulus()) + ")/<" + std::to_string(params.p()) + ">";
}

inline std::string paren(std::span<const GroupElement> s) { return "(" + to_string(s) + ")"; }

/// Accepts "4", "4..8".
inline std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t lo = 0, hi = 0;
    if (dots == std::string::npos) {
      lo = hi = std::stoul(text);
    } else {
      lo = std::stoul(text.substr(0, dots));
      hi = std::stoul(text.substr(dots + 2));
    }
    if (lo < 1 || hi < lo) throw std::invalid_argument("bad bounds");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::Parse, "--m-range expects 'a..b' with 1 <= a <= b, got '" + text + "'");
  }
}

/// Lenient sequence input: canonicalise and sort, warning when that changed it.
inline SuitableSequence read_sequence(const QuotientGroup& g, const std::string& text,
                                      const std::string& flag, std::ostream& err) {
  const auto values = parse_integers(text);
  SuitableSequence s = normalize_sequence(g, values);
  bool unchanged = values.size() == s.length();
  for (std::size_t i = 0; unchanged && i < values.size(); ++i) {
    unchanged = values[i] == s[i].value;
  }
  if (!unchanged) {
    err << "warning: " << flag << " '" << text << "' normalized to " << to_string(s) << "\n";
  }
  return s;
}

// ---- group -----------------------------------------------------------------

struct GroupArgs {
  std::uint64_t p = 0;
  unsigned n = 0;
  Format format = Format::Plain;
};

inline int cmd_group(const GroupArgs& a, std::ostream& out) {
  const QuotientGroup g(a.p, a.n);
  const auto& elems = g.elements();
  std::vector<std::vector<GroupElement>> table;
  for (GroupElement x : elems) {
    std::vector<GroupElement> row;
    for (GroupElement y : elems) row.push_back(g.mul(x, y));
    table.push_back(std::move(row));
  }

  if (a.format == Format::Json) {
    json j;
    j["p"] = a.p;
    j["n"] = a.n;
    j["modulus"] = g.modulus();
    j["p_coset"] = g.p_coset_elements();
    j["G"] = elements_json(elems);
    j["order"] = g.order();
    j["degenerate"] = g.params().degenerate();
    json rows = json::array();
    for (const auto& row : table) rows.push_back(elements_json(row));
    j["table"] = rows;
    out << j.dump(2) << "\n";
    return kSuccess;
  }
  if (a.format == Format::Csv) {
    out << "*";
    for (GroupElement y : elems) out << "," << y.value;
    out << "\n";
    for (std::size_t i = 0; i < elems.size(); ++i) {
      out << elems[i].value;
      for (GroupElement v : table[i]) out << "," << v.value;
      out << "\n";
    }
    return kSuccess;
  }

  if (g.params().degenerate()) {
    out << "GF(2): p^n - 1 = 1, so G is the trivial group {1}\n";
  }
  out << "G = " << group_label(g) << " = {" << to_string(elems, ", ") << "}, |G| = "
      << g.order() << "\n";
  std::size_t width = 1;
  for (GroupElement e : elems) width = std::max(width, std::to_string(e.value).size());
  out << std::setw(static_cast<int>(width)) << "*" << " |";
  for (GroupElement y : elems) out << " " << std::setw(static_cast<int>(width)) << y.value;
  out << "\n" << std::string(width + 1, '-') << "+"
      << std::string(elems.size() * (width + 1), '-') << "\n";
  for (std::size_t i = 0; i < elems.size(); ++i) {
    out << std::setw(static_cast<int>(width)) << elems[i].value << " |";
    for (GroupElement v : table[i]) out << " " << std::setw(static_cast<int>(width)) << v.value;
    out << "\n";
  }
  return kSuccess;
}

// ---- table -------------------------------------------------------------------

struct TableArgs {
  std::uint64_t p = 0;
  unsigned n = 0;
  std::string m_range = "1..1";
  std::string method = "formula";
  Format format = Format::Plain;
};

struct TableColumn {
  std::size_t m = 0;
  std::optional<CountReport> formula;
  std::optional<ClassificationResult> brute;
  bool match = true;
};

inline int cmd_table(const TableArgs& a, std::ostream& out) {
  if (a.method != "formula" && a.method != "brute" && a.method != "both") {
    throw Error(ErrorKind::Parse, "--method must be formula, brute or both");
  }
  const auto [lo, hi] = parse_range(a.m_range);
  const QuotientGroup g(a.p, a.n);
  const SubgroupLattice lattice = all_subgroups(g);
  const bool use_formula = a.method != "brute";
  const bool use_brute = a.method != "formula";

  std::vector<TableColumn> cols;
  bool all_match = true;
  for (std::size_t m = lo; m <= hi; ++m) {
    TableColumn col;
    col.m = m;
    if (use_formula) col.formula = total_count(g, lattice, m);
    if (use_brute) {
      ClassifyOptions opts;
      opts.budget = enumeration_budget();
      opts.keep_classes = false;
      col.brute = brute_force_classes(g, m, opts);
    }
    if (use_formula && use_brute) {
      col.match = col.formula->total == col.brute->total &&
                  col.formula->per_n.size() == col.brute->per_n.size();
      for (const auto& [n, c] : col.formula->per_n) {
        const auto it = col.brute->per_n.find(n);
        const BigInt brute_t = it == col.brute->per_n.end() ? BigInt(0) : BigInt(it->second);
        if (c.classes != brute_t) col.match = false;
      }
      all_match = all_match && col.match;
    }
    cols.push_back(std::move(col));
  }

  const std::size_t max_n = std::min<std::size_t>(hi, g.order());
  auto formula_t = [](const TableColumn& c, std::size_t n) -> std::optional<BigInt> {
    if (!c.formula) return std::nullopt;
    const auto it = c.formula->per_n.find(n);
    if (it == c.formula->per_n.end()) return std::nullopt;
    return it->second.classes;
  };
  auto brute_t = [](const TableColumn& c, std::size_t n) -> std::optional<BigInt> {
    if (!c.brute) return std::nullopt;
    if (n > c.m) return std::nullopt;
    const auto it = c.brute->per_n.find(n);
    return it == c.brute->per_n.end() ? BigInt(0) : BigInt(it->second);
  };

  if (a.format == Format::Csv) {
    out << "p,n,m,N,t_N,T_N,method\n";
    for (const auto& c : cols) {
      const std::size_t top = std::min<std::size_t>(c.m, g.order());
      for (std::size_t n = 1; n <= top; ++n) {
        if (c.formula) {
          const auto& nc = c.formula->per_n.at(n);
          out << a.p << "," << a.n << "," << c.m << "," << n << "," << nc.t_n << ","
              << nc.classes << ",formula\n";
        }
        if (c.brute) {
          const auto seqs = c.brute->sequences_per_n.count(n) ? c.brute->sequences_per_n.at(n) : 0;
          out << a.p << "," << a.n << "," << c.m << "," << n << "," << seqs << ","
              << *brute_t(c, n) << ",brute\n";
        }
      }
    }
    return all_match ? kSuccess : kNegative;
  }

  if (a.format == Format::Json) {
    json arr = json::array();
    for (const auto& c : cols) {
      json j;
      j["p"] = a.p;
      j["n"] = a.n;
      j["m"] = c.m;
      j["G"] = elements_json(g.elements());
      j["method"] = a.method;
      j["classes"] = nullptr;
      json per_n = json::object(), t_n = json::object();
      if (c.formula) {
        for (const auto& [n, nc] : c.formula->per_n) {
          per_n[std::to_string(n)] = big_to_json(nc.classes);
          t_n[std::to_string(n)] = big_to_json(nc.t_n);
        }
        j["total"] = big_to_json(c.formula->total);
      } else {
        for (const auto& [n, v] : c.brute->per_n) per_n[std::to_string(n)] = v;
        for (const auto& [n, v] : c.brute->sequences_per_n) t_n[std::to_string(n)] = v;
        j["total"] = c.brute->total;
      }
      j["per_N"] = per_n;
      j["t_N"] = t_n;
      if (c.formula && c.brute) {
        json bp = json::object();
        for (const auto& [n, v] : c.brute->per_n) bp[std::to_string(n)] = v;
        j["brute_per_N"] = bp;
        j["brute_total"] = c.brute->total;
        j["match"] = c.match;
      }
      arr.push_back(j);
    }
    out << arr.dump(2) << "\n";
    return all_match ? kSuccess : kNegative;
  }

  out << "T(N) for G = " << group_label(g) << ", |G| = " << g.order()
      << ", method = " << a.method << "\n";
  const int w = 9;
  out << std::left << std::setw(8) << "" << std::right;
  for (const auto& c : cols) out << std::setw(w) << ("m=" + std::to_string(c.m));
  out << "\n";
  auto cell = [&](const TableColumn& c, std::size_t n) -> std::string {
    if (n > std::min<std::size_t>(c.m, g.order())) return "-";
    const auto f = formula_t(c, n);
    const auto b = brute_t(c, n);
    if (f && b && *f != *b) return f->str() + "/" + b->str();
    return f ? f->str() : b->str();
  };
  for (std::size_t n = 1; n <= max_n; ++n) {
    out << std::left << std::setw(8) << ("N=" + std::to_string(n)) << std::right;
    for (const auto& c : cols) out << std::setw(w) << cell(c, n);
    out << "\n";
  }
  out << std::left << std::setw(8) << "Total" << std::right;
  for (const auto& c : cols) {
    out << std::setw(w)
        << (c.formula ? c.formula->total.str() : std::to_string(c.brute->total));
  }
  out << "\n";
  if (use_formula && use_brute) {
    out << std::left << std::setw(8) << "Check" << std::right;
    for (const auto& c : cols) out << std::setw(w) << (c.match ? "MATCH" : "MISMATCH");
    out << "\n";
  }
  return all_match ? kSuccess : kNegative;
}

// ---- witness -------------------------------------------------------------------

struct WitnessArgs {
  std::uint64_t p = 0;
  unsigned n = 0;
  std::string s1, s2;
  std::string verify;  // "", "exhaustive" or "sampled"
  Format format = Format::Plain;
};

inline int cmd_witness(const WitnessArgs& a, std::ostream& out, std::ostream& err) {
  const QuotientGroup g(a.p, a.n);
  const SuitableSequence s1 = read_sequence(g, a.s1, "--s1", err);
  const SuitableSequence s2 = read_sequence(g, a.s2, "--s2", err);
  if (!a.verify.empty() && a.verify != "exhaustive" && a.verify != "sampled") {
    throw Error(ErrorKind::Parse, "--verify must be exhaustive or sampled");
  }

  const auto q = isomorphic(g, s1, s2);
  if (!q) {
    if (a.format == Format::Json) {
      json j{{"p", a.p}, {"n", a.n}, {"s1", elements_json(s1.entries())},
             {"s2", elements_json(s2.entries())}, {"isomorphic", false}};
      out << j.dump(2) << "\n";
    } else {
      out << "NOT-ISOMORPHIC: no q in {" << to_string(support_profile(s1).support, ", ")
          << "} maps " << paren(s2.entries()) << " onto " << paren(s1.entries()) << "\n";
    }
    return kNegative;
  }

  const IsomorphismWitness w = build_witness(g, s1, s2, *q);
  const auto exps = frobenius_exponents(g.params(), w);
  std::optional<VerificationReport> report;
  if (!a.verify.empty()) {
    const FiniteField f(a.p, a.n);
    VerifyOptions opts;
    opts.budget = verification_budget();
    report = verify_witness(f, s1, s2, w,
                            a.verify == "exhaustive" ? VerifyMode::Exhaustive : VerifyMode::Sampled,
                            opts);
  }

  if (a.format == Format::Json) {
    json sigma = json::array(), powers = json::array(), ex = json::array();
    for (std::size_t s : w.sigma) sigma.push_back(s + 1);
    for (unsigned l : w.frobenius_powers) powers.push_back(l);
    for (auto e : exps) ex.push_back(e);
    json j{{"p", a.p},         {"n", a.n},           {"s1", elements_json(s1.entries())},
           {"s2", elements_json(s2.entries())},   {"isomorphic", true},
           {"q", w.q.value},   {"sigma", sigma},     {"frobenius_powers", powers},
           {"exponents", ex}};
    if (report) {
      j["verification"] = {{"mode", a.verify},
                           {"verified", report->verified()},
                           {"checks", report->compatibility_checks}};
    }
    out << j.dump(2) << "\n";
  } else {
    out << "ISOMORPHIC: " << paren(s1.entries()) << " = " << w.q.value << " * "
        << paren(s2.entries()) << "\n";
    out << "q = " << w.q.value << "\n";
    out << "sigma =";
    for (std::size_t s : w.sigma) out << " " << s + 1;
    out << "\nfrobenius_powers =";
    for (unsigned l : w.frobenius_powers) out << " " << l;
    out << "\ntheta(x1..x" << s1.length() << ") = (";
    for (std::size_t j = 0; j < w.sigma.size(); ++j) {
      if (j != 0) out << ", ";
      out << "x" << w.sigma[j] + 1;
      if (exps[j] != 1) out << "^" << exps[j];
    }
    out << ")\neta(s_a) = t_{a^" << w.q.value << "}\n";
    if (report) {
      out << (report->verified() ? "VERIFIED" : "VERIFICATION FAILED") << " (" << a.verify
          << ", " << report->compatibility_checks << " compatibility checks)";
      if (!report->verified()) out << ": " << report->failure;
      out << "\n";
    }
  }
  return report && !report->verified() ? kNegative : kSuccess;
}

// ---- classes ---------------------------------------------------------------------

struct ClassesArgs {
  std::uint64_t p = 0;
  unsigned n = 0;
  std::size_t m = 1;
  Format format = Format::Plain;
};

inline json classes_json(const ClassesArgs& a, const QuotientGroup& g,
                         const ClassificationResult& r) {
  json j;
  j["p"] = a.p;
  j["n"] = a.n;
  j["m"] = a.m;
  j["G"] = elements_json(g.elements());
  json per_n = json::object();
  for (const auto& [n, v] : r.per_n) per_n[std::to_string(n)] = v;
  j["per_N"] = per_n;
  j["total"] = r.total;
  json cls = json::array();
  for (const auto& c : r.classes) {
    json orbit_members = json::array();
    for (const auto& s : orbit(g, c.representative)) orbit_members.push_back(elements_json(s.entries()));
    cls.push_back({{"representative", elements_json(c.representative.entries())},
                   {"N", c.support_size},
                   {"orbit_size", c.orbit_size},
                   {"orbit", orbit_members}});
  }
  j["classes"] = cls;
  return j;
}

inline int cmd_classes(const ClassesArgs& a, std::ostream& out) {
  const QuotientGroup g(a.p, a.n);
  ClassifyOptions opts;
  opts.budget = enumeration_budget();
  const ClassificationResult r = brute_force_classes(g, a.m, opts);

  if (a.format == Format::Json) {
    out << classes_json(a, g, r).dump(2) << "\n";
    return kSuccess;
  }
  if (a.format == Format::Csv) {
    out << "N,orbit_size,representative\n";
    for (const auto& c : r.classes) {
      out << c.support_size << "," << c.orbit_size << ",\"" << to_string(c.representative)
          << "\"\n";
    }
    return kSuccess;
  }
  out << "St(1," << a.m << ",G) for G = " << group_label(g) << ": " << r.sequences
      << " sequences, " << r.total << " classes\n";
  for (const auto& c : r.classes) {
    out << "N=" << c.support_size << "  size=" << c.orbit_size << "  ";
    bool first = true;
    for (const auto& s : orbit(g, c.representative)) {
      out << (first ? "" : " ~ ") << paren(s.entries());
      first = false;
    }
    out << "\n";
  }
  return kSuccess;
}

// ---- axioms ------------------------------------------------------------------------

struct AxiomsArgs {
  std::uint64_t p = 0;
  unsigned n = 0;
  std::size_t m = 0;  // 0: take the length of --seq
  std::string seq;
  std::string frobenius;
  Format format = Format::Plain;
};

inline int cmd_axioms(const AxiomsArgs& a, std::ostream& out) {
  const FiniteField f(a.p, a.n);
  ActionSpec spec;
  spec.exponents = parse_integers(a.seq);
  if (!a.frobenius.empty()) {
    for (auto l : parse_integers(a.frobenius)) spec.frobenius_powers.push_back(static_cast<unsigned>(l));
  }
  if (a.m != 0 && a.m != spec.dimension()) {
    throw Error(ErrorKind::LengthMismatch, "--m " + std::to_string(a.m) + " but --seq has " +
                                               std::to_string(spec.dimension()) + " entries");
  }
  const AxiomReport r = check_axioms(f, spec, verification_budget());

  const std::vector<std::pair<std::string, bool>> rows{
      {"(1) scalars are endomorphisms of (V,+)", r.endomorphisms},
      {"(2) 0 in A", r.has_zero},
      {"(2) id in A", r.has_identity},
      {"(2) -id in A", r.has_negation},
      {"(3) A* is a subgroup of Aut(V)", r.units_form_group},
      {"(4) A acts fixed point freely", r.fixed_point_free},
      {"(5) Q(V) generates V", r.quasi_kernel_generates},
  };
  if (a.format == Format::Json) {
    json j{{"p", a.p},
           {"n", a.n},
           {"m", spec.dimension()},
           {"exponents", spec.exponents},
           {"endomorphisms", r.endomorphisms},
           {"has_zero", r.has_zero},
           {"has_identity", r.has_identity},
           {"has_negation", r.has_negation},
           {"units_form_group", r.units_form_group},
           {"fixed_point_free", r.fixed_point_free},
           {"quasi_kernel_size", r.quasi_kernel_size},
           {"quasi_kernel_generates", r.quasi_kernel_generates},
           {"near_vector_space", r.all_satisfied()}};
    out << j.dump(2) << "\n";
  } else if (a.format == Format::Csv) {
    out << "condition,satisfied\n";
    for (const auto& [name, ok] : rows) out << "\"" << name << "\"," << (ok ? "yes" : "no") << "\n";
  } else {
    out << "V = GF(" << a.p << "^" << a.n << ")^" << spec.dimension() << ", exponents ("
        << a.seq << ")\n";
    for (const auto& [name, ok] : rows) out << (ok ? "  PASS  " : "  FAIL  ") << name << "\n";
    out << "  |Q(V)| = " << r.quasi_kernel_size << "\n";
    out << (r.all_satisfied() ? "near-vector space" : "NOT a near-vector space") << "\n";
  }
  return r.all_satisfied() ? kSuccess : kNegative;
}

// ---- driver ---------------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify and count near-vector spaces GF(p^n)^m up to isomorphism"};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{
      {"plain", Format::Plain}, {"table", Format::Plain}, {"json", Format::Json}, {"csv", Format::Csv}};

  auto add_field = [](CLI::App* sub, std::uint64_t& p, unsigned& n) {
    sub->add_option("--p", p, "prime p")->required();
    sub->add_option("--n", n, "extension degree n")->required();
  };
  auto add_format = [&](CLI::App* sub, Format& fmt) {
    sub->add_option("--format", fmt, "plain | json | csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };

  GroupArgs ga;
  auto* group = app.add_subcommand("group", "print G = U(p^n-1)/<p> and its multiplication table");
  add_field(group, ga.p, ga.n);
  add_format(group, ga.format);

  TableArgs ta;
  auto* table = app.add_subcommand("table", "T(N) grid for a range of m");
  add_field(table, ta.p, ta.n);
  table->add_option("--m-range", ta.m_range, "m or a..b")->required();
  table->add_option("--method", ta.method, "formula | brute | both");
  add_format(table, ta.format);

  WitnessArgs wa;
  auto* witness = app.add_subcommand("witness", "decide isomorphism and print a witness");
  add_field(witness, wa.p, wa.n);
  witness->add_option("--s1", wa.s1, "first sequence, e.g. 1,1,5,5")->required();
  witness->add_option("--s2", wa.s2, "second sequence")->required();
  witness->add_option("--verify", wa.verify, "exhaustive | sampled");
  add_format(witness, wa.format);

  ClassesArgs ca;
  auto* classes = app.add_subcommand("classes", "list isomorphism classes of St(1,m,G)");
  add_field(classes, ca.p, ca.n);
  classes->add_option("--m", ca.m, "sequence length")->required()->check(CLI::PositiveNumber);
  add_format(classes, ca.format);

  AxiomsArgs aa;
  auto* axioms = app.add_subcommand("axioms", "check the near-vector space axioms exhaustively");
  add_field(axioms, aa.p, aa.n);
  axioms->add_option("--m", aa.m, "dimension (must match --seq)");
  axioms->add_option("--seq", aa.seq, "exponents q_1,...,q_m")->required();
  axioms->add_option("--frobenius", aa.frobenius, "optional Frobenius powers l_1,...,l_m");
  add_format(axioms, aa.format);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*group) return cmd_group(ga, out);
    if (*table) return cmd_table(ta, out);
    if (*witness) return cmd_witness(wa, out, err);
    if (*classes) return cmd_classes(ca, out);
    if (*axioms) return cmd_axioms(aa, out);
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << " (set NEARVEC_BUDGET to raise it)\n";
    return kBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Internal ? kNegative : kUsage;
  }
  return kUsage;
}

}  // namespace nearvec::cli
