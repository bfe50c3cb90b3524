#pragma once

#include "zarank/bounds.hpp"
#include "zarank/determinant.hpp"
#include "zarank/experiment.hpp"
#include "zarank/geometry.hpp"
#include "zarank/hypergraph.hpp"
#include "zarank/multipoly.hpp"
#include "zarank/partition.hpp"
#include "zarank/rational.hpp"
