#include "maxiset/error.hpp"

namespace maxiset {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input:
      return 2;
    case ErrorKind::infeasible_design:
      return 3;
    case ErrorKind::numeric_failure:
      return 4;
    case ErrorKind::io_failure:
      return 5;
  }
  return 1;
}

}  // namespace maxiset
