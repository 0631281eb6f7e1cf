#pragma once

#include "locpr/backward_push.hpp"
#include "locpr/bippr.hpp"
#include "locpr/contrib_detect.hpp"
#include "locpr/errors.hpp"
#include "locpr/estimate.hpp"
#include "locpr/graph.hpp"
#include "locpr/ground_truth.hpp"
#include "locpr/hard_instances.hpp"
#include "locpr/json_io.hpp"
#include "locpr/monte_carlo.hpp"
#include "locpr/oracle.hpp"
#include "locpr/rng.hpp"
