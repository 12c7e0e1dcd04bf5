#pragma once

// Umbrella header.

#include "reidlab/emden_fowler.hpp"
#include "reidlab/errors.hpp"
#include "reidlab/frequency.hpp"
#include "reidlab/invariant.hpp"
#include "reidlab/linear.hpp"
#include "reidlab/mechanics.hpp"
#include "reidlab/numerics.hpp"
#include "reidlab/reid.hpp"
