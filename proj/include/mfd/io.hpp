#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "mfd/algebra.hpp"
#include "mfd/entail.hpp"
#include "mfd/member.hpp"
#include "mfd/relational.hpp"

namespace mfd {

using json = nlohmann::json;

// Unreadable file or a document that does not follow the expected layout.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path);
json load_json(const std::filesystem::path& path);

// Finite pomonoid document:
//   {"elements": [...], "unit": "1", "times": [[name...]...],
//    "leq": [[0/1...]...]}  or  "order": [["a","b"], ...]  (a <= b, closed
//   reflexively and transitively).
FinitePomonoid algebra_from_json(const json& doc);
json algebra_to_json(const FinitePomonoid& algebra);
json lattice_to_json(const FiniteResiduatedLattice& lattice);

using AnyRelation = std::variant<RankedRelation<UnitIntervalPomonoid>, RankedRelation<FinitePomonoid>>;

// {"algebra": "product" | "min" | "lukasiewicz" | "bool2" | {finite algebra},
//  "scheme": [...], "domains": {p: "scalar" | "vectorN" | "token"},
//  "similarity": {p: {"kind": "exp_euclidean", "c": 2}
//                   | {"kind": "equality", "bottom": x}
//                   | {"kind": "table", "labels": [...], "values": [[...]]}},
//  "tuples": [[v...]...]}
AnyRelation relation_from_json(const json& doc);

json mfd_to_json(const Mfd& f);
json path_to_json(const RewritePath& path);
json verdict_to_json(const Verdict& v);
json member_to_json(const MemberResult& m);

}  // namespace mfd
