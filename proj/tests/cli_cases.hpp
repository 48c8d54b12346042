#pragma once

// One representative invocation per verb, shared by the CLI tests and the
// acceptance suite.

#include <sstream>
#include <string>
#include <vector>

#include "sumfree/cli.hpp"

namespace cli_cases {

inline const std::vector<std::vector<std::string>>& per_verb() {
  static const std::vector<std::vector<std::string>> v = {
      {"classify", "--set", "5,6,7,8,17,18,19,20", "--n", "20", "--eta", "1e-10"},
      {"classify", "--n", "18", "--eta", "0.001", "--scan"},
      {"stability", "--c1", "1,4,6,9,11,14,16,19", "--c2", "2,3,7,8,12,13,17,18", "--n", "20", "--eta", "0.05"},
      {"types", "--a1", "1,4", "--a2", "2,3", "--n", "20", "--delta", "0"},
      {"mu", "--n", "14", "--r", "2"},
      {"h", "--r", "2"},
      {"witness", "--set", "1,2,3,4", "--r", "2"},
      {"count", "--family", "sf1", "--n", "24"},
      {"count", "--family", "sf2", "--n", "16"},
      {"verify", "--lemma", "bootstrap", "--max", "12"},
      {"verify", "--lemma", "summation", "--max", "6", "--max-span", "8"},
      {"search", "--max-size", "8", "--max-span", "20"},
      {"example42", "--x", "3"},
      {"bound", "--name", "janson", "--sets", "0,1;1,2;3", "--gamma", "4"},
      {"bound", "--name", "restricted-partitions", "--k", "10", "--l", "3"},
      {"opt", "--claim", "h310"},
  };
  return v;
}

struct Outcome {
  int status = 0;
  std::string out;
  std::string err;
};

inline Outcome run(std::vector<std::string> args, const std::string& threads = "") {
  if (!threads.empty()) {
    args.push_back("--threads");
    args.push_back(threads);
  }
  std::ostringstream out, err;
  Outcome o;
  o.status = sumfree::cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

inline std::string digest(const std::string& document) {
  return nlohmann::json::parse(document).at("manifest").at("result_digest").get<std::string>();
}

}  // namespace cli_cases
