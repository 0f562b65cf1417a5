#pragma once

// Parsed command-line configuration for the vsec tool; round-trips through
// JSON so reports can embed the exact invocation parameters.

#include "vsec/json_io.hpp"

namespace vsec {

struct CommandConfig {
    std::string subcommand;
    std::uint32_t order = 2; // field order for classify-planes
    std::uint32_t q = 2;     // base subfield order for censuses and the search
    std::uint64_t seed = 0;
    int threads = 1;
    int pairs = 100;
    std::string out;
    std::string csv;
    std::string checkpoint;
    std::string strategy = "restricted-slice";
    std::string input;
    bool long_run = false;
    std::uint64_t budget = std::uint64_t(1) << 40;

    bool operator==(const CommandConfig&) const = default;
};

inline json config_to_json(const CommandConfig& c) {
    return {{"subcommand", c.subcommand}, {"order", c.order},     {"q", c.q},
            {"seed", c.seed},             {"threads", c.threads}, {"pairs", c.pairs},
            {"out", c.out},               {"csv", c.csv},         {"checkpoint", c.checkpoint},
            {"strategy", c.strategy},     {"input", c.input},     {"long_run", c.long_run},
            {"budget", c.budget}};
}

inline CommandConfig config_from_json(const json& j) {
    CommandConfig c;
    c.subcommand = j.at("subcommand").get<std::string>();
    c.order = j.at("order").get<std::uint32_t>();
    c.q = j.at("q").get<std::uint32_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.threads = j.at("threads").get<int>();
    c.pairs = j.at("pairs").get<int>();
    c.out = j.at("out").get<std::string>();
    c.csv = j.at("csv").get<std::string>();
    c.checkpoint = j.at("checkpoint").get<std::string>();
    c.strategy = j.at("strategy").get<std::string>();
    c.input = j.at("input").get<std::string>();
    c.long_run = j.at("long_run").get<bool>();
    c.budget = j.at("budget").get<std::uint64_t>();
    return c;
}

} // namespace vsec
