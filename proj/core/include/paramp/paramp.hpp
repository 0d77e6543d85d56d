#pragma once

#include "paramp/errors.hpp"
#include "paramp/flux.hpp"
#include "paramp/fock.hpp"
#include "paramp/gaussian.hpp"
#include "paramp/model.hpp"
#include "paramp/output.hpp"
#include "paramp/version.hpp"
