// wseq: Whitehead sequences of free DGAs and counts of adapted systems.
//
// Exit codes: 0 ok (also for infinite or unknown outcomes), 2 parse or
// validation error, 3 resource bound, 4 internal invariant failure.

#include "wseq/io.hpp"
#include "wseq/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <regex>

using namespace wseq;

namespace {

std::pair<int, int> parse_range(const std::string& s) {
  static const std::regex re(R"((\d+)\.\.(\d+))");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw DomainError("range must look like 2..N, got '" + s + "'");
  int lo = std::stoi(m[1]), hi = std::stoi(m[2]);
  if (lo < 2 || lo > hi) throw DomainError("range " + s + " is empty or starts below 2");
  return {lo, hi};
}

void emit(const Report& r, bool json, std::string (*text)(const Report&)) {
  if (json)
    std::cout << r.dump(2) << '\n';
  else
    std::cout << text(r);
}

Report fixture_ledger(const std::string& file) {
  const std::string p = ledger_path_for(file);
  return p.empty() ? Report{} : load_ledger(p);
}

std::unique_ptr<GammaProvider> make_provider(const std::string& choice) {
  if (choice == "realized") return std::make_unique<RealizedGammaProvider>();
  if (choice == "closed-form") return std::make_unique<ClosedFormGammaProvider>();
  if (choice.rfind("table:", 0) == 0) return std::make_unique<TableGammaProvider>(load_gamma_table(choice.substr(6)));
  throw DomainError("unknown provider '" + choice + "' (realized, closed-form or table:<file>)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whitehead exact sequences of free DGAs over Z and classification of adapted systems"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  std::string file, file_b, range = "", provider = "closed-form", equivalence = "naive";
  int max_degree = 0;
  long max_systems = 1'000'000;

  auto* hom = app.add_subcommand("homology", "H_n(V,d) and H_n(T(V)) per degree");
  hom->add_option("file", file, ".dga file")->required();
  hom->add_option("--max-degree", max_degree, "top degree (default: top generator degree)");
  hom->add_flag("--json", json, "machine-readable output");

  auto* wh = app.add_subcommand("whitehead", "Whitehead sequence invariants and verdicts");
  wh->add_option("file", file, ".dga file")->required();
  wh->add_option("--range", range, "degree range lo..hi (default 2..top)");
  wh->add_flag("--json", json, "machine-readable output");

  auto* cl = app.add_subcommand("classify", "count adapted systems for a homology list");
  cl->add_option("file", file, ".hgr file")->required();
  cl->add_option("--provider", provider, "realized | closed-form | table:<file>");
  cl->add_option("--max-degree", max_degree, "top degree of the b-family")->required();
  cl->add_option("--equivalence", equivalence, "naive | orbit")->check(CLI::IsMember({"naive", "orbit"}));
  cl->add_option("--max-systems", max_systems, "enumeration bound");
  cl->add_flag("--json", json, "machine-readable output");

  auto* cmp = app.add_subcommand("compare", "decide whether two Whitehead sequences are isomorphic");
  cmp->add_option("a", file, "first .dga file")->required();
  cmp->add_option("b", file_b, "second .dga file")->required();
  cmp->add_option("--range", range, "degree range lo..hi");
  cmp->add_flag("--json", json, "machine-readable output");

  auto* sp = app.add_subcommand("split", "characteristic pair: perfect differential and pi classes");
  sp->add_option("file", file, ".dga file")->required();
  sp->add_option("--range", range, "degree range lo..hi");
  sp->add_flag("--json", json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*hom) {
      const FreeDGA d = load_dga(file).dga;
      emit(homology_report(d, max_degree > 0 ? max_degree : d.max_degree(), fixture_ledger(file)), json,
           text_homology);
    } else if (*wh) {
      const FreeDGA d = load_dga(file).dga;
      auto [lo, hi] = range.empty() ? std::pair{2, default_top(d)} : parse_range(range);
      emit(whitehead_report(d, lo, hi, fixture_ledger(file)), json, text_whitehead);
    } else if (*cl) {
      const GradedGroup h = load_hgr(file);
      auto p = make_provider(provider);
      ClassifyOptions opt;
      opt.max_degree = max_degree;
      opt.mode = equivalence == "orbit" ? Equivalence::orbit : Equivalence::naive;
      opt.max_systems = max_systems;
      emit(classify_report(h, *p, count_classes(h, *p, opt)), json, text_classify);
    } else if (*cmp) {
      const FreeDGA a = load_dga(file).dga, b = load_dga(file_b).dga;
      auto [lo, hi] = range.empty() ? std::pair{2, std::max(default_top(a), default_top(b))} : parse_range(range);
      emit(compare_report(sequences_isomorphic(whitehead_sequence(a, lo, hi), whitehead_sequence(b, lo, hi)), lo, hi),
           json, text_compare);
    } else if (*sp) {
      const FreeDGA d = load_dga(file).dga;
      auto [lo, hi] = range.empty() ? std::pair{2, default_top(d)} : parse_range(range);
      emit(split_report(characteristic_pair(d, lo, hi)), json, text_split);
    }
  } catch (const ResourceError& e) {
    std::cerr << "resource bound: " << e.what() << '\n';
    return 3;
  } catch (const InvariantError& e) {
    std::cerr << "internal invariant failed: " << e.what() << '\n';
    return 4;
  } catch (const InfiniteError& e) {
    std::cerr << "infinite: " << e.what() << '\n';
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
