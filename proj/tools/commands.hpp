#pragma once

// Subcommands of the descent-kit tool and the ledger they append to.

#include <functional>
#include <iosfwd>
#include <mutex>

#include "corpus.hpp"

namespace descent_kit::cli {

enum ExitCode { kOk = 0, kNegative = 1, kInconsistent = 2, kInputError = 3 };

/// Result of one command on one instance.
struct Outcome {
  std::string instance;
  std::string hash;
  std::string command;
  int code = kOk;
  Json bounds = Json::object();
  /// Criterion id -> verdict name.
  Json verdicts = Json::object();
  /// Criterion id -> witness (maps, modules, elements).
  Json witnesses = Json::object();
  /// Full report shown to the user.
  Json report = Json::object();
  std::string error;
};

/// 2 outranks 3, which outranks 1.
int combine_codes(int a, int b);

struct DescentOptions {
  std::uint64_t bound = 16;
  std::uint64_t purity_bound = 0;
  bool joyal_tierney = false;
};

Outcome run_validate(const Instance& inst);
Outcome run_separability(const Instance& inst);
/// sides: "left", "right" or "both". With oracle the verdict is agreement of
/// the exact criterion with the bounded oracle.
Outcome run_purity(const Instance& inst, const std::string& sides, std::uint64_t bound, bool oracle);
Outcome run_check_descent(const Instance& inst, const DescentOptions& opt);
Outcome run_endo_check(const Instance& inst, std::uint64_t bound);
Outcome run_matrix_check(const Instance& inst, std::uint64_t bound);
/// check-descent for homs and endo-check for bimodules, plus comparison with
/// the instance's expected outcome (mismatch gives exit 1).
Outcome run_report_entry(const Instance& inst, std::uint64_t bound);

/// Runs f on every instance with up to jobs threads; results in input order.
std::vector<Outcome> run_all(const std::vector<Instance>& insts, const std::function<Outcome(const Instance&)>& f,
                             std::size_t jobs);

/// JSON-lines ledger; the single writer of the file.
class Ledger {
 public:
  explicit Ledger(std::string path) : path_(std::move(path)) {}
  /// Appends one record per outcome, in the given order.
  void append(const std::vector<Outcome>& outcomes);
  static Json record(const Outcome& o);
  /// SOURCE_DATE_EPOCH when set, otherwise the current time (UTC, ISO 8601).
  static std::string timestamp();

 private:
  std::string path_;
  std::mutex mu_;
};

/// Aligned text table for a list of outcomes.
std::string text_table(const std::vector<Outcome>& outcomes);

/// Full command line entry point.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace descent_kit::cli
