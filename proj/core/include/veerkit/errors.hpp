#pragma once

#include <stdexcept>
#include <string>

namespace veerkit {

// Every failure raised by the library derives from Error and carries a stable
// kind string, which the CLI copies into its JSON error records.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define VEERKIT_ERROR(Name)                                                   \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(#Name, what) {}        \
    }

VEERKIT_ERROR(SchemaError);
VEERKIT_ERROR(SignatureError);
VEERKIT_ERROR(GluingError);
VEERKIT_ERROR(NoCoorientation);
VEERKIT_ERROR(TautnessError);
VEERKIT_ERROR(VeeringError);
VEERKIT_ERROR(StructureError);
VEERKIT_ERROR(ConventionError);
VEERKIT_ERROR(NotACycle);
VEERKIT_ERROR(NotCarried);
VEERKIT_ERROR(NotFlippable);
VEERKIT_ERROR(Flippable);
VEERKIT_ERROR(DimensionGuard);
VEERKIT_ERROR(DimensionMismatch);
VEERKIT_ERROR(NotAdjacentAtVertex);
VEERKIT_ERROR(SameOrientation);
VEERKIT_ERROR(NotSymmetric);
VEERKIT_ERROR(OddFamily);
VEERKIT_ERROR(SizeGuard);

#undef VEERKIT_ERROR

}  // namespace veerkit
