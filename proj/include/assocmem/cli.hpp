#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "assocmem/hopfield.hpp"
#include "assocmem/holographic.hpp"
#include "assocmem/quantum.hpp"
#include "assocmem/serialize.hpp"

namespace assocmem::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

// Runs one command line (args[0] is the program name). Results go to `out`,
// the resolved option set and diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// JSON reports printed by `recall`; exposed so callers can reproduce the CLI
// output from direct library calls.
Json recall_report(const RecallResult& r);
Json recall_report(const HoloRecall& r);
Json recall_report(const QuantumRecall& r);

} // namespace assocmem::cli
