#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "zplie/algebra.hpp"
#include "zplie/maps.hpp"
#include "zplie/solver.hpp"
#include "zplie/structure.hpp"

namespace zplie::io {

// All artifacts are JSON with rationals written as "p/q" (or "p") strings.
// Writers are deterministic: equal inputs give byte-identical text.

std::string algebra_to_json(const Algebra& alg);
/// Validates associativity, the unit law and (when present) the block layout.
Algebra algebra_from_json(std::string_view text);

std::string family_to_json(const Algebra& alg, const MapFamily& f);
/// Level 0 may be omitted from "levels"; it must be the identity when present.
MapFamily family_from_json(std::string_view text, const Algebra& alg);

std::string solution_space_to_json(const SolutionSpace& s);
SolutionSpace solution_space_from_json(std::string_view text, const Algebra& alg);

std::string delta_to_json(const Algebra& alg, const DeltaSequence& d);
DeltaSequence delta_from_json(std::string_view text, const Algebra& alg);

std::string decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(std::string_view text, const Algebra& alg);

std::string classification_to_json(const Algebra& alg, const XiClassification& c);
XiClassification classification_from_json(std::string_view text, const Algebra& alg);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace zplie::io
