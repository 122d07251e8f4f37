#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace shiftlab {

// Every contract violation surfaced by the library carries one of these
// codes. The CLI maps them onto its exit statuses.
enum class Errc {
    // corpus
    NonProlongable,
    NonGrowing,
    RuleDomainIncomplete,
    InsufficientPrecision,
    RationalSlope,
    ReduciblePermutation,
    NonMinimalDetected,
    EmptyFile,
    AlphabetMismatch,
    AlphabetTooLarge,
    // language
    PrefixTooShort,
    WordNotInLanguage,
    BeyondHorizon,
    NotBispecial,
    // graphs
    MalformedPath,
    CorrespondenceIncomplete,
    // moves
    NotBispecialEdge,
    ClassUnsupported,
    // loops
    TruncatedWindingSet,
    EmptyWindingSet,
    DegenerateLoop,
    // density
    BlockOutOfRange,
    NotASubword,
    HypothesisFails,
    // coloring
    CutoffTooLarge,
    // generic
    BadArgument,
    IoError,
    Overflow,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

using Symbol = std::uint8_t;  // index into the alphabet, < 64

} // namespace shiftlab
