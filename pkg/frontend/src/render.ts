/** Recipe execution: parse the CSVs, draw, encode, write. Inputs are only
 * ever read; the image is written in one shot after rendering succeeds. */

import { writeFileSync } from "node:fs";

import { parseSweepCsv } from "./csv.js";
import { encodePng } from "./png.js";
import { renderHeatmap } from "./heatmap.js";
import { renderLinePlot } from "./lineplot.js";
import { FigureRecipe, RecipeError } from "./recipe.js";

export function render(recipe: FigureRecipe): string {
  const sweeps = recipe.input.map((p) => parseSweepCsv(p));
  let canvas;
  if (recipe.kind === "heatmap") {
    if (sweeps.length !== 1) {
      throw new RecipeError("heatmap recipes take exactly one input CSV");
    }
    canvas = renderHeatmap(sweeps[0], {
      logColor: recipe.colorScale === "log",
      title: recipe.title,
    });
  } else {
    canvas = renderLinePlot(sweeps, {
      logX: recipe.logX,
      logY: recipe.logY,
      guideY: recipe.guideY,
      title: recipe.title,
    });
  }
  const png = encodePng(canvas.width, canvas.height, canvas.pixels);
  writeFileSync(recipe.output, png);
  return recipe.output;
}
