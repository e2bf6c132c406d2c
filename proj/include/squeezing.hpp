#pragma once

#include "squeezing/core.hpp"
#include "squeezing/wpoly.hpp"
#include "squeezing/domain.hpp"
#include "squeezing/automorphism.hpp"
#include "squeezing/sequence.hpp"
#include "squeezing/squeeze.hpp"
#include "squeezing/scaling.hpp"
#include "squeezing/convergence.hpp"
#include "squeezing/io.hpp"
#include "squeezing/experiments.hpp"
