#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace mslab::verify {

// Named verifier suites behind `mslab verify`. Each returns
// {suite, trials, seed, failures, max_statistic, pass, ...}.
// Suites: lemma15, lemma16, lemma17, prop1, laplace, estermann-fe, laurent.
nlohmann::ordered_json run_suite(const std::string& suite, uint64_t trials, uint64_t seed,
                                 unsigned threads);

}  // namespace mslab::verify
