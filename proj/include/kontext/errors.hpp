// Exception taxonomy shared across the library. Exit codes follow the CLI
// contract: 1 = invalid model, 2 = violated precondition (degenerate context,
// incompatible pair, wrong classification, impossible convention),
// 3 = non-representable recursion step.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kontext {

class error : public std::runtime_error {
public:
    explicit error(const std::string& msg, int exit_code = 2)
        : std::runtime_error(msg), exit_code_(exit_code) {}

    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

/// Parse failures, referential-integrity failures, broken type invariants.
class model_error : public error {
public:
    explicit model_error(const std::string& msg) : error(msg, 1) {}
};

/// Conditioning on a zero-measure event, or a partition cell with no mass
/// inside the conditioning slot.
class degenerate_context_error : public error {
public:
    explicit degenerate_context_error(const std::string& msg) : error(msg, 2) {}
};

/// A reference pair whose joint level sets do not all carry positive mass.
class incompatible_pair_error : public error {
public:
    explicit incompatible_pair_error(const std::string& msg) : error(msg, 2) {}
};

/// A context handed to a representation map of the wrong class
/// (e.g. a hyperbolic context sent to the complex-amplitude builder).
class classification_error : public error {
public:
    explicit classification_error(const std::string& msg) : error(msg, 2) {}
};

/// The paired phase convention was requested but the transition matrix
/// cannot support it.
class convention_error : public error {
public:
    explicit convention_error(const std::string& msg) : error(msg, 2) {}
};

/// Basis-change matrix cannot be unitary; carries the failing column sums
/// in the message.
class unitarity_error : public error {
public:
    explicit unitarity_error(const std::string& msg) : error(msg, 2) {}
};

/// A splitting step produced an interference coefficient outside [-1, 1];
/// the trace cannot be lifted to a complex amplitude.
class non_representable_error : public error {
public:
    non_representable_error(const std::string& msg, std::size_t step)
        : error(msg, 3), step_(step) {}

    /// 1-based index of the offending splitting step.
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

}  // namespace kontext
