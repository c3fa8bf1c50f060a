#pragma once

#include "soaxis/axis.hpp"
#include "soaxis/corpus.hpp"
#include "soaxis/embedding.hpp"
#include "soaxis/error.hpp"
#include "soaxis/eval.hpp"
#include "soaxis/patterns.hpp"
#include "soaxis/pmi.hpp"
