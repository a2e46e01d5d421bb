#pragma once

// Umbrella header for the docrank library.

#include "docrank/bootstrap.hpp"
#include "docrank/errors.hpp"
#include "docrank/evaluation.hpp"
#include "docrank/graph.hpp"
#include "docrank/graph_io.hpp"
#include "docrank/java_extractor.hpp"
#include "docrank/java_parser.hpp"
#include "docrank/pagerank.hpp"
#include "docrank/ranking.hpp"
#include "docrank/reports.hpp"
#include "docrank/run_config.hpp"
#include "docrank/statistics.hpp"
#include "docrank/tabular_io.hpp"
