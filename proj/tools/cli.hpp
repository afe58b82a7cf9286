#pragma once

#include <iostream>
#include <optional>
#include <string>

namespace kedge::cli {

// Exit code contract (documented in --help):
//   0  success / Approve
//   1  expectation failure (run) / Reject (policy check)
//   2  invariant or verification failure / Escalate (policy check)
//   3  usage error, missing file, or malformed input
inline constexpr int kExitOk = 0;
inline constexpr int kExitExpectation = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitUsage = 3;

struct RunArgs {
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::string out_dir;        // empty = no artifacts written
    std::string world_override; // empty = scenario's world
    bool json = false;
};

struct VerifyArgs {
    std::string log;
    bool json = false;
};

struct ReplayArgs {
    std::string log;
    std::optional<std::size_t> at; // absent = full length
    bool json = false;
};

struct LineageArgs {
    std::string log;
    std::string intent;
    bool json = false;
};

struct PolicyCheckArgs {
    std::string policies;
    std::string request;
    bool json = false;
};

struct SubmitArgs {
    std::string log;
    std::string policies;
    std::string config;
    std::string intents;
    std::string world; // optional
    bool json = false;
};

int cmd_run(const RunArgs& args, std::ostream& out = std::cout);
int cmd_verify(const VerifyArgs& args, std::ostream& out = std::cout);
int cmd_replay(const ReplayArgs& args, std::ostream& out = std::cout);
int cmd_lineage(const LineageArgs& args, std::ostream& out = std::cout);
int cmd_policy_check(const PolicyCheckArgs& args, std::ostream& out = std::cout);
int cmd_submit(const SubmitArgs& args, std::ostream& out = std::cout);

// Full argv dispatch (reads KEDGE_CONFIG for flag defaults).
int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout);

} // namespace kedge::cli
