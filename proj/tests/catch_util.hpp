#pragma once

// Catch2 helpers shared by the unit-test translation units.

#include <utility>

#include <catch2/catch_amalgamated.hpp>

#include <gsokit/errors.hpp>

namespace testutil {

// Runs fn, which must throw gsokit::Error, and returns the error's kind.
template <typename Fn>
gsokit::ErrorKind error_kind_of(Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
  } catch (const gsokit::Error& e) {
    return e.kind();
  } catch (...) {
    FAIL("threw something other than gsokit::Error");
  }
  FAIL("did not throw");
  return gsokit::ErrorKind::ParseError;  // unreachable; FAIL throws
}

}  // namespace testutil
