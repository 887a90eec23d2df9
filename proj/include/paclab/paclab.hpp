#pragma once

#include "paclab/errors.hpp"
#include "paclab/exactprob.hpp"
#include "paclab/random.hpp"
#include "paclab/montecarlo.hpp"
#include "paclab/toy_model.hpp"
#include "paclab/hypothesis.hpp"
#include "paclab/complexity.hpp"
#include "paclab/datasets.hpp"
