#pragma once

#include <stdexcept>
#include <string>

namespace siltlab {

// Base for every error the library reports by name.
struct Error : std::runtime_error {
  Error(std::string kind, const std::string& what) : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define SILTLAB_ERROR(Name) \
  struct Name : Error {     \
    explicit Name(const std::string& w) : Error(#Name, w) {} \
  }

SILTLAB_ERROR(InputError);
SILTLAB_ERROR(BadField);
SILTLAB_ERROR(NonAdmissibleIdeal);
SILTLAB_ERROR(MalformedPath);
SILTLAB_ERROR(AlgebraMismatch);
SILTLAB_ERROR(DecompositionInconclusive);
SILTLAB_ERROR(NotIndecomposable);
SILTLAB_ERROR(ProviderUnsupported);
SILTLAB_ERROR(SearchBudgetExceeded);
SILTLAB_ERROR(IncompleteUniverse);
SILTLAB_ERROR(ClassOutOfSpan);
SILTLAB_ERROR(NotPresilting);
SILTLAB_ERROR(ExchangeLeavesWindow);
SILTLAB_ERROR(GraphIncomplete);
SILTLAB_ERROR(NotATorsionClass);
SILTLAB_ERROR(NotGFinite);
SILTLAB_ERROR(GVectorNotPresilting);
SILTLAB_ERROR(NotRadical);

#undef SILTLAB_ERROR

}  // namespace siltlab
