#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace volterra::cli {

enum class Command { norm, sandwich, spectrum, gram, kernel, hzeros, iterates, verify };
enum class Format { csv, json };

const char* to_string(Command c);
std::optional<Command> parse_command(const std::string& name);

/// Thrown for malformed or out-of-range arguments; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::norm;
  std::vector<double> alphas;
  double p = 2.0;
  double q = 2.0;
  int n = 0;       // iterate count or kernel index; 0 selects the command default
  int grid_n = 2048;
  double tol = 2e-3;
  int count = 0;   // rows per alpha; 0 selects the command default
  Format format = Format::csv;
  std::string out;  // empty: stdout
  int jobs = 1;
  std::uint64_t seed = 20240611;
};

/// "v", "a,b,c", "start:stop:count" or "start:stop:count:log". Values may
/// be "inf". Throws UsageError.
std::vector<double> parse_alpha_spec(const std::string& spec);

using Value = std::variant<double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

/// Computes the table for a validated config. Work is spread over
/// config.jobs threads; rows come out in input order regardless.
/// Library errors propagate.
Table run(const RunConfig& config);

/// True when every row of a verify table passed.
bool all_passed(const Table& table);

/// CSV with a header row, or a JSON array of flat objects. Floats use 17
/// significant digits; non-finite floats are written as nan/inf in CSV and
/// null in JSON.
void write_table(const Table& table, Format format, std::ostream& out);

/// Parses argv, runs, and writes the output. Returns 0 on success, 1 when a
/// computation fails (the error is written to `err` as a JSON object) or a
/// verify check fails, 2 on usage errors.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace volterra::cli
