#pragma once

#include "hypercart/coloring.hpp"
#include "hypercart/core.hpp"
#include "hypercart/error.hpp"
#include "hypercart/graphfactor.hpp"
#include "hypercart/hyperfactor.hpp"
#include "hypercart/iso.hpp"
#include "hypercart/product.hpp"
#include "hypercart/sections.hpp"
