#pragma once

#include <stdexcept>
#include <string>

namespace tec {

// Base class for every domain error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define TEC_DEFINE_ERROR(NAME)                    \
    class NAME : public Error {                   \
    public:                                       \
        using Error::Error;                       \
    }

// keystream
TEC_DEFINE_ERROR(InvalidSeedMaterial);
TEC_DEFINE_ERROR(InvalidSeed);
TEC_DEFINE_ERROR(ReservedSeed);
TEC_DEFINE_ERROR(PrecisionExhausted);

// stego_codec
TEC_DEFINE_ERROR(PlanMismatch);
TEC_DEFINE_ERROR(CiphertextTruncated);
TEC_DEFINE_ERROR(MalformedPadding);

// fib_coding
TEC_DEFINE_ERROR(ValueOutOfRange);
TEC_DEFINE_ERROR(FibDecodeError);

// password_store
TEC_DEFINE_ERROR(DuplicateUser);
TEC_DEFINE_ERROR(PolicyViolation);
TEC_DEFINE_ERROR(NoIdentifiers);
TEC_DEFINE_ERROR(UnknownUser);
TEC_DEFINE_ERROR(StoreCorrupt);

// protocol
TEC_DEFINE_ERROR(LoginInProgress);
TEC_DEFINE_ERROR(NoPendingLogin);
TEC_DEFINE_ERROR(ChallengeUndecryptable);
TEC_DEFINE_ERROR(FrameError);

// cryptanalysis
TEC_DEFINE_ERROR(NotDecodable);

#undef TEC_DEFINE_ERROR

}  // namespace tec
