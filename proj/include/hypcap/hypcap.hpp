#pragma once

#include "hypcap/errors.hpp"
#include "hypcap/specfun.hpp"
#include "hypcap/hypgeom.hpp"
#include "hypcap/condenser.hpp"
#include "hypcap/capsolve.hpp"
#include "hypcap/harness.hpp"
