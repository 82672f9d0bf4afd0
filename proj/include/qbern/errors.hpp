#pragma once

#include <stdexcept>
#include <string>

namespace qbern {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define QBERN_DEFINE_ERROR(Name)              \
    class Name : public Error {               \
    public:                                   \
        using Error::Error;                   \
    }

QBERN_DEFINE_ERROR(DivisionByZero);
QBERN_DEFINE_ERROR(ParseError);
QBERN_DEFINE_ERROR(ZeroConstantTerm);
QBERN_DEFINE_ERROR(DimensionMismatch);
QBERN_DEFINE_ERROR(SingularMatrix);
QBERN_DEFINE_ERROR(InvalidQ);
QBERN_DEFINE_ERROR(QEqualsOne);
QBERN_DEFINE_ERROR(InvalidOrder);
QBERN_DEFINE_ERROR(InsufficientSequence);
QBERN_DEFINE_ERROR(PoleAtSample);
QBERN_DEFINE_ERROR(DomainError);
QBERN_DEFINE_ERROR(UnknownIdentity);
QBERN_DEFINE_ERROR(UnknownFunction);
QBERN_DEFINE_ERROR(IoError);

#undef QBERN_DEFINE_ERROR

} // namespace qbern
