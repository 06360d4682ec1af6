#pragma once

#include "satbench/brute_force.hpp"
#include "satbench/cnf.hpp"
#include "satbench/degree_sequence.hpp"
#include "satbench/dimacs.hpp"
#include "satbench/dpll.hpp"
#include "satbench/error.hpp"
#include "satbench/fit.hpp"
#include "satbench/generators.hpp"
#include "satbench/gf2.hpp"
#include "satbench/instance.hpp"
#include "satbench/native_io.hpp"
#include "satbench/noise_opt.hpp"
#include "satbench/parallel.hpp"
#include "satbench/record_io.hpp"
#include "satbench/rng.hpp"
#include "satbench/stats.hpp"
#include "satbench/study.hpp"
#include "satbench/usa_filter.hpp"
#include "satbench/walksat.hpp"
