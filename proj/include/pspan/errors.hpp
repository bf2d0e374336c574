#ifndef PSPAN_ERRORS_HPP
#define PSPAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pspan {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define PSPAN_DEFINE_ERROR(Name)                                        \
    struct Name : Error {                                               \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
    }

PSPAN_DEFINE_ERROR(MalformedNet);
PSPAN_DEFINE_ERROR(UnknownNode);
PSPAN_DEFINE_ERROR(SizeGuardExceeded);
PSPAN_DEFINE_ERROR(NotPure);
PSPAN_DEFINE_ERROR(NoEvents);
PSPAN_DEFINE_ERROR(NoConditions);
PSPAN_DEFINE_ERROR(InvalidTagging);
PSPAN_DEFINE_ERROR(AmbiguousLabels);
PSPAN_DEFINE_ERROR(Disconnected);
PSPAN_DEFINE_ERROR(NoEdges);
PSPAN_DEFINE_ERROR(MalformedCode);
PSPAN_DEFINE_ERROR(EmptyInput);
PSPAN_DEFINE_ERROR(ConfigInvalid);
PSPAN_DEFINE_ERROR(InvalidInhibitor);
PSPAN_DEFINE_ERROR(IoError);

#undef PSPAN_DEFINE_ERROR

} // namespace pspan

#endif
