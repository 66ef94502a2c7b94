#pragma once

#include <stdexcept>
#include <string>

namespace rateassure {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Encoding / curve errors
struct MalformedEncoding : Error { using Error::Error; };
struct InvalidPoint : Error { using Error::Error; };

// DAA errors
struct InvalidJoinProof : Error { using Error::Error; };
struct RevocationListFull : Error { using Error::Error; };

// Device errors
struct DeviceNotActivated : Error { using Error::Error; };
struct DecryptionFailure : Error { using Error::Error; };
struct CredentialMismatch : Error { using Error::Error; };
struct TamperNotEnabled : Error { using Error::Error; };
struct UntrustedManufacturer : Error { using Error::Error; };
struct ExceededJoinLimit : Error { using Error::Error; };

// Time window errors
struct MalformedWindow : Error { using Error::Error; };

// Protocol errors
struct InvalidOrigin : Error { using Error::Error; };

// Storage
struct StorageFailure : Error { using Error::Error; };

}  // namespace rateassure
