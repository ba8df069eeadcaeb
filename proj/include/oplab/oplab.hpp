#pragma once

// Umbrella header.

#include "oplab/cli.hpp"
#include "oplab/domain.hpp"
#include "oplab/errors.hpp"
#include "oplab/json_io.hpp"
#include "oplab/multiadd.hpp"
#include "oplab/operators.hpp"
#include "oplab/parse.hpp"
#include "oplab/piecewise.hpp"
#include "oplab/polynomial.hpp"
#include "oplab/ratfunc.hpp"
#include "oplab/rational.hpp"
#include "oplab/recovery.hpp"
#include "oplab/relations.hpp"
#include "oplab/report.hpp"
#include "oplab/ring.hpp"
#include "oplab/rng.hpp"
#include "oplab/sqrt2.hpp"
#include "oplab/subring.hpp"
