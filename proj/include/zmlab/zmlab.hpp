#pragma once

#include "zmlab/common.hpp"
#include "zmlab/primes.hpp"
#include "zmlab/dirichlet.hpp"
#include "zmlab/estimate.hpp"
#include "zmlab/steinhaus.hpp"
#include "zmlab/proxy.hpp"
#include "zmlab/moments.hpp"
