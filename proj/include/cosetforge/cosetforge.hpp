#pragma once

#include "error.hpp"
#include "partition.hpp"
#include "qbinom.hpp"
#include "bound.hpp"
#include "counting.hpp"
#include "abelian.hpp"
#include "cosetring.hpp"
#include "spectral.hpp"
#include "sunit.hpp"
#include "oracles.hpp"
#include "verify.hpp"
