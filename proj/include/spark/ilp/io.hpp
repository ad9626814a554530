// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spark/ilp/problem.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace spark {

/// Accepts either the JSON problem document or the MPS subset. A document
/// whose first non-blank character is '{' is read as JSON.
IlpProblem parse_problem(std::string_view text);

IlpProblem parse_json_problem(std::string_view text);

/// Free-form MPS: NAME, OBJSENSE, ROWS (N/L/G/E), COLUMNS with optional
/// INTORG/INTEND markers, RHS, BOUNDS (UP/LO/FX/BV), ENDATA. Non-zero lower
/// bounds and finite upper bounds become explicit rows. Coefficients must be
/// integers.
IlpProblem parse_mps_problem(std::string_view text);

/// Canonical JSON form. parse_problem(serialize_json(p)) == p.
std::string serialize_json(const IlpProblem& problem);

IlpProblem load_problem(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace spark
