#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "trispec/config.hpp"

namespace tri {

enum class Command { SOLVE, VERIFY, INTERIOR, SWEEP, ORACLE };
const char* command_name(Command c);

// Rows of doubles under a header.  Written as ASCII CSV, values "%.17e", LF line ends.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::string csv() const;
};

std::string format_double(double v);

struct RunOutput {
    Command command = Command::SOLVE;
    std::vector<std::pair<std::string, Table>> tables;  // file name, content
    nlohmann::json manifest;
};

// Checks solver preconditions (ConfigError) without computing anything.
void validate(const ProblemConfig& c, Command cmd);

// validate, then compute.  Numerical failures surface as NumericalError.
RunOutput run(const ProblemConfig& c, Command cmd);

// Writes every table and manifest.json into dir (created if missing).  ConfigError if unwritable.
void emit(const RunOutput& out, const std::string& dir);

}  // namespace tri
