#pragma once

#include <bcube/analysis.hpp>
#include <bcube/coloring.hpp>
#include <bcube/cpr.hpp>
#include <bcube/digits.hpp>
#include <bcube/error.hpp>
#include <bcube/io.hpp>
#include <bcube/routing.hpp>
#include <bcube/rwa.hpp>
#include <bcube/topology.hpp>
