#pragma once

#include "postcrit/blocks.hpp"
#include "postcrit/kneading.hpp"
#include "postcrit/matrix.hpp"
#include "postcrit/simplex.hpp"

#include <json.hpp>

#include <string>

namespace pcs {

using Json = nlohmann::ordered_json;

// {"q": "pow3tower" | [ints], "b": {"builtin": "finite", "m": 3} | {"builtin": "countable"} | [ints],
//  "level_cap": n (optional)}. Integers may be JSON numbers or decimal strings.
ResonantSpec spec_from_json(const Json& j);
Json spec_to_json(const ResonantSpec& spec);
ResonantSpec load_spec(const std::string& path);

// {"levels": [{"cells": m, "parent": [...]}, ...]}
PartitionTree tree_from_json(const Json& j);
Json tree_to_json(const PartitionTree& t);
PartitionTree load_tree(const std::string& path);

// Every number is a string: "p/q" rationals, decimal integers.
Json to_json(const Rational& q);
Json to_json(const BigInt& n);
Json to_json(const Span& s);
Json to_json(const PiecewiseVector& v);
Json to_json(const BlockMatrix& m);
Json to_json(const RationalMatrix& m);
Json to_json(const std::vector<Rational>& v);

}  // namespace pcs
