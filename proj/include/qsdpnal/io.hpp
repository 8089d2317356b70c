#pragma once

#include <string>

#include "qsdpnal/solver.hpp"

namespace qsdpnal {

/// JSON instance text. Doubles are written in shortest round-trip form, so
/// read(write(p)) reproduces p exactly.
std::string write_instance(const QsdpProblem& p);
QsdpProblem read_instance(const std::string& text);

std::string write_solution(const Solution& s);
/// Validates dimensions against p and refreshes the QW caches.
Solution read_solution(const std::string& text, const QsdpProblem& p);

std::string write_kkt(const KktReport& r);
/// Structured report; `history` adds the per-iteration tables.
std::string write_report(const SolveReport& r, bool history = false);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace qsdpnal
