#include "shiftlab/common.hpp"

namespace shiftlab {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NonProlongable: return "NonProlongable";
        case Errc::NonGrowing: return "NonGrowing";
        case Errc::RuleDomainIncomplete: return "RuleDomainIncomplete";
        case Errc::InsufficientPrecision: return "InsufficientPrecision";
        case Errc::RationalSlope: return "RationalSlope";
        case Errc::ReduciblePermutation: return "ReduciblePermutation";
        case Errc::NonMinimalDetected: return "NonMinimalDetected";
        case Errc::EmptyFile: return "EmptyFile";
        case Errc::AlphabetMismatch: return "AlphabetMismatch";
        case Errc::AlphabetTooLarge: return "AlphabetTooLarge";
        case Errc::PrefixTooShort: return "PrefixTooShort";
        case Errc::WordNotInLanguage: return "WordNotInLanguage";
        case Errc::BeyondHorizon: return "BeyondHorizon";
        case Errc::NotBispecial: return "NotBispecial";
        case Errc::MalformedPath: return "MalformedPath";
        case Errc::CorrespondenceIncomplete: return "CorrespondenceIncomplete";
        case Errc::NotBispecialEdge: return "NotBispecialEdge";
        case Errc::ClassUnsupported: return "ClassUnsupported";
        case Errc::TruncatedWindingSet: return "TruncatedWindingSet";
        case Errc::EmptyWindingSet: return "EmptyWindingSet";
        case Errc::DegenerateLoop: return "DegenerateLoop";
        case Errc::BlockOutOfRange: return "BlockOutOfRange";
        case Errc::NotASubword: return "NotASubword";
        case Errc::HypothesisFails: return "HypothesisFails";
        case Errc::CutoffTooLarge: return "CutoffTooLarge";
        case Errc::BadArgument: return "BadArgument";
        case Errc::IoError: return "IoError";
        case Errc::Overflow: return "Overflow";
    }
    return "UnknownError";
}

} // namespace shiftlab
