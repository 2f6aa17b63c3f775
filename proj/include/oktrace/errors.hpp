#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oktrace {

/* Internal invariant failures. These signal implementation bugs, never data
 * conditions, so they derive from logic_error. */
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

#define OKT_ASSERT(cond, msg)                                                  \
    do {                                                                       \
        if (!(cond))                                                           \
            throw ::oktrace::internal_error(std::string("invariant failed: ") \
                                            + (msg));                          \
    } while (0)

/* Computed data contradicting a proved theorem. Reachable only through an
 * implementation bug; the CLI maps it to exit code 5. */
struct theorem_violation : std::logic_error {
    using std::logic_error::logic_error;
};

struct parse_error : std::runtime_error {
    std::size_t position;
    parse_error(const std::string& what, std::size_t pos)
        : std::runtime_error(what), position(pos) {}
};

/* Irreducibility could not be decided within the configured effort budget.
 * The analysis pipeline refuses to run on such input (CLI exit code 3). */
struct irreducibility_unknown : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace oktrace
