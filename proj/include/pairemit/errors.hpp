#pragma once

#include <stdexcept>
#include <string>

namespace pairemit {

/// Base for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A normalization radicand vanished: the two-particle state has zero norm
/// (e.g. fermions in identical one-particle states).
class ZeroNormState : public Error {
 public:
  using Error::Error;
};

class InvalidTable : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnequalWidths : public Error {
 public:
  using Error::Error;
};

class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

class InvalidTimeGrid : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidScene : public Error {
 public:
  using Error::Error;
};

/// The dipole action found no excited, zero-photon component to act on.
class NoExcitedComponent : public Error {
 public:
  using Error::Error;
};

/// The dipole action hit an excited atom whose CM label has no recoiled
/// descendant (only PsiStar / PhiStar may emit).
class UnsupportedTransition : public Error {
 public:
  using Error::Error;
};

}  // namespace pairemit
