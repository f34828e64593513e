#ifndef GABOR_CUBE_GABOR_CUBE_HPP
#define GABOR_CUBE_GABOR_CUBE_HPP

#include "classify.hpp"
#include "cli.hpp"
#include "errors.hpp"
#include "frame.hpp"
#include "generators.hpp"
#include "geometry.hpp"
#include "indexed.hpp"
#include "ortho.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "report_json.hpp"
#include "sets.hpp"
#include "sets_json.hpp"
#include "stft.hpp"
#include "tiling.hpp"
#include "tolerance.hpp"

#endif  // GABOR_CUBE_GABOR_CUBE_HPP
