#pragma once

#include <stdexcept>
#include <string>

namespace bunkbed {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// graph construction / lookup
struct MalformedEdge : Error { using Error::Error; };
struct NotAnEdge : Error { using Error::Error; };
struct GenerationExhausted : Error { using Error::Error; };
struct InvalidWeight : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };

// flows
struct SameSourceSink : Error { using Error::Error; };
struct AsymmetricCapacities : Error { using Error::Error; };

// p-resistance
struct AsymmetricResistances : Error { using Error::Error; };
struct DisconnectedPair : Error { using Error::Error; };

// self-avoiding walks
struct WalkLimitExceeded : Error { using Error::Error; };
struct WrongEndpoints : Error { using Error::Error; };
struct WrongClass : Error { using Error::Error; };

// harness
struct ConfigError : Error { using Error::Error; };
struct RecordNotFound : Error { using Error::Error; };
struct Mismatch : Error { using Error::Error; };

} // namespace bunkbed
