#pragma once
// Error taxonomy shared by the library. The CLI maps codes onto exit statuses.

#include <stdexcept>
#include <string>
#include <utility>

namespace bibnet {

enum class Errc {
    MalformedXml,
    MissingIdentifier,
    EmptyCorpus,
    EmptyName,
    UnknownNode,
    SeedNotInGraph,
    EmptySeedSet,
    InvalidConfig,
    GraphTooLarge,
    NotEnoughPositiveNodes,
    CorruptFile,
    UnreadableInput,
    IoError,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, std::string message) {
    throw Error(code, std::move(message));
}

} // namespace bibnet
