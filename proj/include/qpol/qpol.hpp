// qpol.hpp
// Umbrella header for the quaternion polarization library. The Jones-matrix
// reference implementation (qpol/oracle/jones_oracle.hpp) is deliberately not
// included here.

#pragma once

#include "qpol/components.hpp"
#include "qpol/phase_shifter.hpp"
#include "qpol/quaternion.hpp"
#include "qpol/signal.hpp"
