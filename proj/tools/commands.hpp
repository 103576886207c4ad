#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace chowkit::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kUnstable = 3,
  kCorpusFailure = 4,
};

struct CommandResult {
  int exit_code = kOk;
  nlohmann::json output;     // command result document
  std::string message;       // error or help text
  bool json_output = false;  // --json was given
};

/// Parses and runs one invocation (arguments without the program name).
CommandResult run_command(const std::vector<std::string>& args);

/// Canonical text rendering of a result document.
std::string render_text(const nlohmann::json& doc);

/// Whether `actual` contains `expected`: objects by key subset, arrays
/// element-wise, rational strings compared after canonicalization.
bool json_fragment_matches(const nlohmann::json& expected, const nlohmann::json& actual);

/// Runs every case of a corpus file; `${CORPUS_DIR}` in arguments expands to
/// the corpus file's directory.
nlohmann::json run_corpus(const std::string& path, bool& all_passed);

std::string default_corpus_path();

}  // namespace chowkit::cli
