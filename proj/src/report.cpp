#include "wseq/report.hpp"

#include "wseq/io.hpp"

#include <filesystem>
#include <sstream>

namespace wseq {

namespace {

Report integer_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return to_string(x);
}

std::string matrix_str(const IntMatrix& m) {
  if (m.size() == 0) return "[]";
  std::ostringstream os;
  os << '[';
  for (Index i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
  }
  os << ']';
  return os.str();
}

// Ledger claims of one kind and degree, annotated with the recomputed value.
Report annotate(const Report& ledger, const std::string& kind, int n, const std::string& recomputed) {
  Report out = Report::array();
  if (!ledger.is_object() || !ledger.contains("claims")) return out;
  for (const auto& c : ledger["claims"]) {
    if (c.value("kind", "") != kind || c.value("degree", -1) != n) continue;
    Report a;
    a["kind"] = kind;
    a["claimed"] = c.value("claimed", "");
    a["recomputed"] = recomputed;
    a["agrees"] = c.value("claimed", "") == recomputed;
    if (c.contains("note")) a["note"] = c["note"];
    out.push_back(a);
  }
  return out;
}

void text_notes(std::ostringstream& os, const Report& notes) {
  for (const auto& a : notes)
    os << "    ledger: " << a["kind"].get<std::string>() << " claimed " << a["claimed"].get<std::string>()
       << ", recomputed " << a["recomputed"].get<std::string>() << (a["agrees"].get<bool>() ? "" : "  [differs]")
       << (a.contains("note") ? "  (" + a["note"].get<std::string>() + ")" : "") << '\n';
}

std::string hom_str(const Report& f) {
  return f["domain"].get<std::string>() + " -> " + f["codomain"].get<std::string>() + " " +
         f["text"].get<std::string>();
}

}  // namespace

Report to_json(const IntMatrix& m) {
  Report rows = Report::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Report row = Report::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Report to_json(const AbHom& f) {
  Report r;
  r["domain"] = f.domain().str();
  r["codomain"] = f.codomain().str();
  r["matrix"] = to_json(f.matrix());
  r["text"] = matrix_str(f.matrix());
  r["zero"] = f.is_zero();
  return r;
}

Report to_json(const ExtClass& e) {
  Report r;
  r["ext"] = e.ext.str();
  Report el = Report::array();
  for (Index i = 0; i < e.element.size(); ++i) el.push_back(integer_json(e.element(i)));
  r["element"] = el;
  r["trivial"] = e.trivial;
  r["target"] = e.target.str();
  r["representative"] = to_json(e.representative);
  return r;
}

Report load_ledger(const std::string& path) {
  try {
    return Report::parse(read_file(path));
  } catch (const Report::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
}

std::string ledger_path_for(const std::string& fixture) {
  std::filesystem::path p(fixture);
  p.replace_extension(".ledger");
  return std::filesystem::exists(p) ? p.string() : std::string();
}

// ---------------------------------------------------------------- homology

Report homology_report(const FreeDGA& d, int max_degree, const Report& ledger) {
  Report r;
  r["command"] = "homology";
  r["max_degree"] = max_degree;
  WhiteheadEngine e(d);
  Report rows = Report::array();
  for (int n = 1; n <= max_degree; ++n) {
    Report row;
    row["degree"] = n;
    row["H_V"] = e.H_V(n).group().str();
    row["H_T"] = e.H_T(n).group().str();
    Report notes = annotate(ledger, "H_V", n, row["H_V"]);
    for (auto& a : annotate(ledger, "H_T", n, row["H_T"])) notes.push_back(a);
    if (!notes.empty()) row["ledger"] = notes;
    rows.push_back(row);
  }
  r["degrees"] = rows;
  return r;
}

std::string text_homology(const Report& r) {
  std::ostringstream os;
  os << "degree  H_n(V,d)  H_n(T(V))\n";
  for (const auto& row : r["degrees"]) {
    os << "  " << row["degree"].get<int>() << "     " << row["H_V"].get<std::string>() << "    "
       << row["H_T"].get<std::string>() << '\n';
    if (row.contains("ledger")) text_notes(os, row["ledger"]);
  }
  return os.str();
}

// ---------------------------------------------------------------- whitehead

Report whitehead_report(const FreeDGA& d, int lo, int hi, const Report& ledger) {
  Report r;
  r["command"] = "whitehead";
  r["range"] = {lo, hi};
  WhiteheadData w = whitehead_sequence(d, lo, hi);
  r["exactness"] = "ok";
  Report rows = Report::array();
  bool perfect = true, quasi = true;
  for (const auto& x : w.degrees) {
    Report row;
    row["degree"] = x.degree;
    row["H_V"] = x.H_V.str();
    row["H_T"] = x.H_T.str();
    row["gamma"] = x.gamma.str();
    row["b_next"] = to_json(x.b);
    row["coker_b_next"] = x.coker_b.str();
    row["ker_b"] = x.ker_b.str();
    row["phi"] = to_json(x.phi);
    row["bracket"] = to_json(x.bracket);
    row["brace"] = to_json(x.brace);
    row["perfect"] = x.perfect;
    row["quasi_perfect"] = x.quasi_perfect;
    if (x.quasi_perfect) row["splitting"] = homology_splitting_check(d, x.degree);
    Report notes = annotate(ledger, "H_V", x.degree, x.H_V.str());
    for (auto& a : annotate(ledger, "H_T", x.degree, x.H_T.str())) notes.push_back(a);
    for (auto& a : annotate(ledger, "gamma", x.degree, x.gamma.str())) notes.push_back(a);
    for (auto& a : annotate(ledger, "phi", x.degree, x.phi.is_zero() ? "0" : matrix_str(x.phi.matrix()))) notes.push_back(a);
    if (!notes.empty()) row["ledger"] = notes;
    perfect = perfect && x.perfect;
    quasi = quasi && x.quasi_perfect;
    rows.push_back(row);
  }
  r["degrees"] = rows;
  r["perfect"] = perfect;
  r["quasi_perfect"] = quasi;
  return r;
}

std::string text_whitehead(const Report& r) {
  std::ostringstream os;
  for (const auto& row : r["degrees"]) {
    const int n = row["degree"].get<int>();
    os << "degree " << n << ":\n"
       << "  H_" << n << "(V,d) = " << row["H_V"].get<std::string>() << "\n"
       << "  H_" << n << "(T(V)) = " << row["H_T"].get<std::string>() << "\n"
       << "  Gamma_" << n << " = " << row["gamma"].get<std::string>() << "\n"
       << "  b_" << n + 1 << " : " << hom_str(row["b_next"]) << "\n"
       << "  Coker b_" << n + 1 << " = " << row["coker_b_next"].get<std::string>() << ", ker b_" << n << " = "
       << row["ker_b"].get<std::string>() << "\n"
       << "  phi_" << n << " : " << hom_str(row["phi"]) << "\n"
       << "  [phi_" << n << "] in " << row["bracket"]["ext"].get<std::string>()
       << (row["bracket"]["trivial"].get<bool>() ? " trivial" : " nontrivial") << "\n"
       << "  {phi_" << n << "} in " << row["brace"]["ext"].get<std::string>()
       << (row["brace"]["trivial"].get<bool>() ? " trivial" : " nontrivial") << "\n";
    if (row.contains("splitting"))
      os << "  H_" << n << "(T(V)) = Coker b_" << n + 1 << " + ker b_" << n << ": "
         << (row["splitting"].get<bool>() ? "holds" : "FAILS") << "\n";
    if (row.contains("ledger")) text_notes(os, row["ledger"]);
    os << "degree " << n << ": perfect = " << (row["perfect"].get<bool>() ? "true" : "false") << "\n";
    os << "degree " << n << ": quasi-perfect = " << (row["quasi_perfect"].get<bool>() ? "true" : "false") << "\n";
  }
  os << "exactness: " << r["exactness"].get<std::string>() << "\n";
  return os.str();
}

// ---------------------------------------------------------------- classify

Report classify_report(const GradedGroup& h, const GammaProvider& provider, const ClassificationResult& res) {
  Report r;
  r["command"] = "classify";
  Report hj;
  for (const auto& [n, g] : h) hj[std::to_string(n)] = g.str();
  r["homology"] = hj;
  r["provider"] = provider.name();
  r["equivalence"] = to_string(res.mode);
  r["outcome"] = to_string(res.outcome);
  Report per = Report::array();
  for (const auto& [n, c] : res.per_degree) per.push_back({{"degree", n}, {"count", c}});
  r["per_degree"] = per;
  r["stages"] = res.stage_counts;
  if (res.outcome == ClassificationResult::Outcome::finite) {
    r["count"] = res.count;
    r["naive_count"] = res.naive_count;
  }
  if (res.outcome == ClassificationResult::Outcome::infinite) r["infinite_degree"] = res.infinite_degree;
  if (!res.reason.empty()) r["reason"] = res.reason;
  if (res.lower_bound) r["undefined_actions"] = true;

  if (auto* cf = dynamic_cast<const ClosedFormGammaProvider*>(&provider)) {
    const int top = res.per_degree.empty() ? 0 : res.per_degree.back().first - 1;
    Report gj = Report::array();
    for (int n = 6; n <= std::min(9, top); ++n) {
      Report g;
      g["degree"] = n;
      try {
        g["zero_b"] = gamma_closed_form(h, {}, n).str();
        Report terms = Report::array();
        for (const auto& [name, value] : cf->terms(h, n)) terms.push_back({{"term", name}, {"value", value.str()}});
        g["terms"] = terms;
      } catch (const DomainError& e) {
        g["error"] = e.what();
      }
      gj.push_back(g);
    }
    r["gamma"] = gj;
    if (top >= 9) {
      const AbGroup t44 = tor(at_degree(h, 4), at_degree(h, 4));
      if (!t44.is_trivial())
        r["notes"] = {"Gamma_9 includes the summand Tor(H4, H4) = " + t44.str() +
                      "; tabulations that drop it get a smaller Gamma_9 and a different count"};
    }
  }
  Report reps = Report::array();
  for (const auto& s : res.representatives) {
    Report b;
    for (const auto& [n, f] : s.b) b[std::to_string(n)] = f.is_zero() ? "0" : matrix_str(f.matrix());
    reps.push_back(b);
  }
  r["representatives"] = reps;
  return r;
}

std::string text_classify(const Report& r) {
  std::ostringstream os;
  os << "provider: " << r["provider"].get<std::string>() << ", equivalence: " << r["equivalence"].get<std::string>()
     << "\n";
  if (r.contains("gamma"))
    for (const auto& g : r["gamma"]) {
      if (g.contains("error")) continue;
      os << "Gamma_" << g["degree"].get<int>() << " (b = 0) = " << g["zero_b"].get<std::string>() << "  [";
      bool first = true;
      for (const auto& t : g["terms"]) {
        os << (first ? "" : ", ") << t["term"].get<std::string>() << " = " << t["value"].get<std::string>();
        first = false;
      }
      os << "]\n";
    }
  if (r.contains("notes"))
    for (const auto& n : r["notes"]) os << "note: " << n.get<std::string>() << "\n";
  const std::string outcome = r["outcome"].get<std::string>();
  if (outcome == "infinite") {
    os << "INFINITE at degree " << r["infinite_degree"].get<int>() << "\n";
    if (r.contains("reason")) os << "reason: " << r["reason"].get<std::string>() << "\n";
    return os.str();
  }
  os << "stages:";
  for (const auto& c : r["stages"]) os << ' ' << c.get<long>();
  os << "\n";
  if (outcome == "finite") {
    os << "count: " << r["count"].get<long>() << "\n";
    if (r["equivalence"] == "orbit") os << "naive count: " << r["naive_count"].get<long>() << "\n";
  } else {
    os << "UNKNOWN\n";
  }
  if (r.contains("reason")) os << "reason: " << r["reason"].get<std::string>() << "\n";
  return os.str();
}

// ---------------------------------------------------------------- compare and split

Report compare_report(const SequenceIsomorphism& s, int lo, int hi) {
  Report r;
  r["command"] = "compare";
  r["range"] = {lo, hi};
  r["verdict"] = to_string(s.verdict);
  if (!s.reason.empty()) r["reason"] = s.reason;
  if (s.verdict == Verdict::yes) {
    Report w;
    auto put = [&w](const char* key, const std::map<int, AbHom>& m) {
      Report x;
      for (const auto& [n, f] : m) x[std::to_string(n)] = to_json(f);
      w[key] = x;
    };
    put("f", s.f);
    put("gamma", s.gamma);
    put("h", s.h);
    r["witness"] = w;
  }
  return r;
}

std::string text_compare(const Report& r) {
  std::ostringstream os;
  os << "isomorphic: " << r["verdict"].get<std::string>() << "\n";
  if (r.contains("reason")) os << "reason: " << r["reason"].get<std::string>() << "\n";
  if (r.contains("witness"))
    for (const char* key : {"f", "gamma", "h"})
      for (const auto& [n, f] : r["witness"][key].items())
        os << "  " << key << "_" << n << " : " << hom_str(f) << "\n";
  return os.str();
}

Report split_report(const CharacteristicPair& p) {
  Report r;
  r["command"] = "split";
  r["range"] = {p.lo, p.hi};
  r["perfect_dga"] = render_dga(p.perfect);
  Report pi;
  for (const auto& [n, e] : p.pi) pi[std::to_string(n)] = to_json(e);
  r["pi"] = pi;
  return r;
}

std::string text_split(const Report& r) {
  std::ostringstream os;
  os << "# perfect differential\n" << r["perfect_dga"].get<std::string>();
  for (const auto& [n, e] : r["pi"].items()) {
    os << "# pi_" << n << " in " << e["ext"].get<std::string>() << ": "
       << (e["trivial"].get<bool>() ? "trivial" : "nontrivial");
    if (!e["trivial"].get<bool>()) {
      os << ", element (";
      bool first = true;
      for (const auto& x : e["element"]) {
        os << (first ? "" : ", ") << x.dump();
        first = false;
      }
      os << ")";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace wseq
