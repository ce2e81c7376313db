#pragma once

#include "thrsat/combinatorics.hpp"
#include "thrsat/reductions.hpp"
#include "thrsat/solvers.hpp"

#include <json.hpp>

namespace thrsat {

using Json = nlohmann::ordered_json;

// Schema:
// {answer: "YES"|"NO", branch_tag,
//  certificate: {kind, count?, term_bound?, witness_kind?, witness_clauses?,
//                witness_bound?, hitting_set?},
//  params_used: {name: value}, budget: {leaves_expanded, exceeded},
//  good_assignment_count?, ledger?: [{core, size}]}
// Big integers and rationals are decimal strings.
Json verdict_to_json(const Verdict& v, bool budget_exceeded = false);
// Inverse of verdict_to_json. Ledger entries keep only core and size.
Verdict verdict_from_json(const Json& j);

Json tree_to_json(const DecompositionTree& t);
Json sunflower_to_json(const Sunflower& s);
Json reduction_to_json(const ReductionRecord& r);

}  // namespace thrsat
