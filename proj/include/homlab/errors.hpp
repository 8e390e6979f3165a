#ifndef HOMLAB_ERRORS_HPP
#define HOMLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace homlab {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input (JSON, duplicate edges, bipartition violations). CLI exit code 2.
struct parse_error : error {
    using error::error;
};

// Enumeration budget exceeded. CLI exit code 3.
struct instance_too_large : error {
    using error::error;
};

struct unknown_vertex : error {
    explicit unknown_vertex(const std::string& name) : error("unknown vertex: " + name) {}
};

struct duplicate_edge : parse_error {
    duplicate_edge(const std::string& a, const std::string& b)
        : parse_error("duplicate edge (" + a + "," + b + ")") {}
};

struct bipartition_violation : parse_error {
    using parse_error::parse_error;
};

struct pin_conflict : error {
    using error::error;
};

struct missing_bipartition : error {
    using error::error;
};

struct not_forbidden_free : error {
    using error::error;
};

struct not_reduced : error {
    using error::error;
};

struct solve_failure : error {
    using error::error;
};

struct singular_family : error {
    using error::error;
};

struct not_tractable_form : error {
    using error::error;
};

struct bad_counts : error {
    using error::error;
};

struct variant_mismatch : error {
    using error::error;
};

struct condition_failure : error {
    using error::error;
};

struct out_of_fragment : error {
    using error::error;
};

struct not_a_cycle_gadget : error {
    using error::error;
};

// Engine self-check failed (verify_parsimonious and friends).
struct assertion_report : error {
    using error::error;
};

} // namespace homlab

#endif
