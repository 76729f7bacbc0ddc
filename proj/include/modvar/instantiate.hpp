#pragma once

// Every templated module is compiled for exactly these two fields.
#include "modvar/exactla/field.hpp"

#define MODVAR_FOR_EACH_FIELD(X) \
  X(::modvar::PrimeField)        \
  X(::modvar::RationalField)
