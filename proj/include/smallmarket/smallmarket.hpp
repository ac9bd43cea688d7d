#pragma once

// Gains-from-trade maximizing simple mechanisms for one-seller two-buyer
// markets over finite product distributions: exact solver, monotonization,
// sample-based learning, and audit tooling.

#include "smallmarket/common.hpp"
#include "smallmarket/dist.hpp"
#include "smallmarket/gft.hpp"
#include "smallmarket/io.hpp"
#include "smallmarket/learn.hpp"
#include "smallmarket/mech.hpp"
#include "smallmarket/optdp.hpp"
#include "smallmarket/oracle.hpp"
#include "smallmarket/rational.hpp"
#include "smallmarket/transform.hpp"
#include "smallmarket/version.hpp"
