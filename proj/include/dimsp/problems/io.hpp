#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>

#include "dimsp/problems/jssp.hpp"
#include "dimsp/problems/qmkp.hpp"
#include "dimsp/problems/tsp.hpp"

namespace dimsp {

// Instance file grammars are documented in docs/file_formats.md. All parsers
// tolerate trailing whitespace, trailing blank lines and both LF and CRLF;
// anything else raises ParseError with the offending 1-based line number.

JsspInstance parse_jssp(std::istream& in);
JsspInstance parse_jssp_file(const std::filesystem::path& path);

TspInstance parse_tsplib(std::istream& in);
TspInstance parse_tsplib_file(const std::filesystem::path& path);

/// Single-knapsack quadratic knapsack file; the declared capacity is split
/// evenly across `num_knapsacks`.
QmkpInstance parse_qkp(std::istream& in, int num_knapsacks);
QmkpInstance parse_qkp_file(const std::filesystem::path& path, int num_knapsacks);

void write_jssp(std::ostream& out, const JsspInstance& instance);
void write_tsplib(std::ostream& out, const TspInstance& instance);
void write_qkp(std::ostream& out, const QmkpInstance& instance);

void write_jssp_file(const std::filesystem::path& path, const JsspInstance& instance);
void write_tsplib_file(const std::filesystem::path& path, const TspInstance& instance);
void write_qkp_file(const std::filesystem::path& path, const QmkpInstance& instance);

/// Loads an instance file as a ready-to-run problem. `kind` is one of
/// "jssp", "tsp", "qmkp"; `num_knapsacks` applies to qmkp only.
std::unique_ptr<Problem> load_problem(const std::string& kind,
                                      const std::filesystem::path& path,
                                      int num_knapsacks = 3);

}  // namespace dimsp
