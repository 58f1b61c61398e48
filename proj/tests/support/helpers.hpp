#pragma once

#include <gtest/gtest.h>

#include <functional>

#include "witt/error.hpp"

// Kind of the WittError raised by f; records a failure when nothing is thrown.
inline witt::ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const witt::WittError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no WittError thrown";
  return witt::ErrorKind::ParseError;
}
