#pragma once

#include "atlaskit/algebra.hpp"
#include "atlaskit/atlas.hpp"
#include "atlaskit/builders.hpp"
#include "atlaskit/catalog.hpp"
#include "atlaskit/dot.hpp"
#include "atlaskit/dsl.hpp"
#include "atlaskit/errors.hpp"
#include "atlaskit/gluing_file.hpp"
#include "atlaskit/groupoid.hpp"
#include "atlaskit/morphism.hpp"
#include "atlaskit/natrel.hpp"
#include "atlaskit/pseudogroup.hpp"
#include "atlaskit/relation.hpp"
#include "atlaskit/reconstruct.hpp"
#include "atlaskit/report.hpp"
#include "atlaskit/sampled.hpp"
