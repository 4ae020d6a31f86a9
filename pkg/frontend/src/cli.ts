#!/usr/bin/env node
/**
 * Render ddrfsim sweep CSVs into PNG figures.
 *
 *   ddrf-figures --recipe fig.json
 *   ddrf-figures --input map.csv --kind heatmap --out map.png [--log-color]
 *   ddrf-figures --input a.csv --input b.csv --kind line --out c.png \
 *       [--log-x] [--log-y] [--guide-y 1] [--title "..."]
 */

import { loadRecipeFile, normalizeRecipe, FigureRecipe } from "./recipe.js";
import { render } from "./render.js";

function parseArgs(argv: string[]): FigureRecipe[] {
  const recipes: FigureRecipe[] = [];
  const inputs: string[] = [];
  const flags: Record<string, unknown> = {};
  for (let i = 0; i < argv.length; i++) {
    const a = argv[i];
    const next = () => {
      i += 1;
      if (i >= argv.length) throw new Error(`missing value for ${a}`);
      return argv[i];
    };
    switch (a) {
      case "--recipe":
        recipes.push(loadRecipeFile(next()));
        break;
      case "--input":
        inputs.push(next());
        break;
      case "--kind":
        flags["kind"] = next();
        break;
      case "--out":
        flags["output"] = next();
        break;
      case "--title":
        flags["title"] = next();
        break;
      case "--log-color":
        flags["color_scale"] = "log";
        break;
      case "--log-x":
        flags["log_x"] = true;
        break;
      case "--log-y":
        flags["log_y"] = true;
        break;
      case "--guide-y":
        flags["guide_y"] = Number(next());
        break;
      case "--help":
      case "-h":
        console.log(
          "usage: ddrf-figures --recipe FILE | " +
            "--input CSV [--input CSV ...] --kind heatmap|line --out PNG " +
            "[--log-color] [--log-x] [--log-y] [--guide-y V] [--title T]"
        );
        process.exit(0);
        break;
      default:
        throw new Error(`unknown argument ${a}`);
    }
  }
  if (inputs.length > 0 || Object.keys(flags).length > 0) {
    recipes.push(normalizeRecipe({ input: inputs, ...flags }, "command line"));
  }
  if (recipes.length === 0) {
    throw new Error("nothing to do: pass --recipe or --input/--kind/--out");
  }
  return recipes;
}

export function main(argv: string[]): number {
  let recipes: FigureRecipe[];
  try {
    recipes = parseArgs(argv);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }
  for (const recipe of recipes) {
    try {
      const out = render(recipe);
      console.log(`wrote ${out}`);
    } catch (err) {
      console.error(`error: ${(err as Error).message}`);
      return 1;
    }
  }
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
