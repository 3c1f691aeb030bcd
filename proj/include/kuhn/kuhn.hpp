#pragma once
// Umbrella header.

#include "kuhn/classifier.hpp"
#include "kuhn/config.hpp"
#include "kuhn/corpus.hpp"
#include "kuhn/error.hpp"
#include "kuhn/ontology.hpp"
#include "kuhn/scenario.hpp"
#include "kuhn/tracker.hpp"
