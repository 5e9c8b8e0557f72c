#pragma once

#include "atdist/adtool_xml.hpp"
#include "atdist/brute_force_ted.hpp"
#include "atdist/counterexample_harness.hpp"
#include "atdist/counterexamples.hpp"
#include "atdist/embedding.hpp"
#include "atdist/error.hpp"
#include "atdist/label_distance.hpp"
#include "atdist/mapping.hpp"
#include "atdist/multiset_distance.hpp"
#include "atdist/ops.hpp"
#include "atdist/output.hpp"
#include "atdist/radical_distance.hpp"
#include "atdist/report.hpp"
#include "atdist/similarity.hpp"
#include "atdist/ted.hpp"
#include "atdist/tree.hpp"
