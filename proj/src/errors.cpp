#include "cohav/errors.hpp"

namespace cohav {

std::string_view to_string(Signal s) {
  switch (s) {
    case Signal::none: return "ok";
    case Signal::insensitive: return "insensitive";
    case Signal::underflow: return "underflow";
    case Signal::unbounded: return "unbounded";
  }
  return "unknown";
}

}  // namespace cohav
