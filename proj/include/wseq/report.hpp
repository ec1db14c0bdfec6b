#pragma once

// JSON reports for the command-line tool and their plain-text rendering.
// Groups appear as strings in the `Z^r + Zd1 + ...` notation.

#include "wseq/classify.hpp"

#include <json.hpp>

namespace wseq {

using Report = nlohmann::ordered_json;

Report to_json(const AbHom& f);
Report to_json(const IntMatrix& m);
Report to_json(const ExtClass& e);

/// Claims about a fixture kept beside it in `<file>.ledger`:
///   {"claims": [{"kind": "H_V" | "H_T" | "gamma" | "phi", "degree": n, "claimed": "...", "note": "..."}]}
Report load_ledger(const std::string& path);
/// Ledger path for a fixture, empty when there is none.
std::string ledger_path_for(const std::string& fixture);

Report homology_report(const FreeDGA& d, int max_degree, const Report& ledger = {});
Report whitehead_report(const FreeDGA& d, int lo, int hi, const Report& ledger = {});
Report classify_report(const GradedGroup& h, const GammaProvider& provider, const ClassificationResult& r);
Report compare_report(const SequenceIsomorphism& s, int lo, int hi);
Report split_report(const CharacteristicPair& p);

std::string text_homology(const Report& r);
std::string text_whitehead(const Report& r);
std::string text_classify(const Report& r);
std::string text_compare(const Report& r);
std::string text_split(const Report& r);

}  // namespace wseq
