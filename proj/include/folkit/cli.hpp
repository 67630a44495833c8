#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace folkit {

// args excludes the program name. Exit codes: 0 ok, 1 domain error or failed check, 2 usage.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CorpusCase {
  std::string name;
  bool pass = false;
  std::vector<std::string> diffs;
};
struct CorpusReport {
  std::vector<CorpusCase> cases;
  std::vector<std::string> warnings;
  bool pass() const;
};
// Each <name>.vf is run with the command in <name>.expected.json and diffed field by field.
CorpusReport corpus_run(const std::string& dir);
std::string corpus_report_to_json(const CorpusReport& r, int indent = 2);

}  // namespace folkit
