#pragma once

#include <iosfwd>
#include <string>

#include "re100/econ.hpp"
#include "re100/envelope.hpp"
#include "re100/lp.hpp"

namespace re100 {

// Line-oriented structured-text serialization, 15 significant digits.
// Lines starting with '#' are comments; every document is bracketed by
// `re100 <kind> 1` ... `end <kind>`. A cost-function document embeds its
// source production function.

std::string to_text(const ProductionFunction& pf);
ProductionFunction production_function_from_text(const std::string& text);

std::string to_text(const BottleneckReport& report);
BottleneckReport bottleneck_report_from_text(const std::string& text);

std::string to_text(const CostFunction& cf, const TechCosts& costs);
CostFunction cost_function_from_text(const std::string& text, TechCosts* costs = nullptr);

std::string to_text(const LpModel& model);
LpModel lp_model_from_text(const std::string& text);

std::string to_text(const LpSolution& solution);
LpSolution lp_solution_from_text(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content,
                const std::string& comment_header = "");

}  // namespace re100
