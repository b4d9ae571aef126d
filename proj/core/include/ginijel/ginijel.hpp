#pragma once

#include "ginijel/asymptotic.hpp"
#include "ginijel/dataset.hpp"
#include "ginijel/dist.hpp"
#include "ginijel/error.hpp"
#include "ginijel/estimator.hpp"
#include "ginijel/jel.hpp"
#include "ginijel/sim.hpp"
