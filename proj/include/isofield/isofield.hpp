#pragma once

#include "isofield/field.hpp"
#include "isofield/isovist.hpp"
#include "isofield/morphology.hpp"
#include "isofield/render.hpp"
#include "isofield/rope.hpp"
#include "isofield/scene.hpp"
#include "isofield/vector_io.hpp"
