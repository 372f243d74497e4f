/**
 * plot --csv r.csv [--csv more.csv] --x k --y value_norm --out fig.svg
 *      [--logy] [--group algo] [--title text]
 */

import { CsvError } from "./csv.js";
import { PlotSpec, renderToFile } from "./plot.js";

function parseArgs(argv: string[]): PlotSpec {
  const csvPaths: string[] = [];
  let x = "k";
  let y = "value_norm";
  let groupBy = "algo";
  let outPath = "";
  let logY = false;
  let title: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const a = argv[i];
    const next = () => {
      i++;
      if (i >= argv.length) {
        throw new Error(`flag ${a} needs a value`);
      }
      return argv[i];
    };
    switch (a) {
      case "--csv":
        csvPaths.push(next());
        break;
      case "--x":
        x = next();
        break;
      case "--y":
        y = next();
        break;
      case "--group":
        groupBy = next();
        break;
      case "--out":
        outPath = next();
        break;
      case "--logy":
        logY = true;
        break;
      case "--title":
        title = next();
        break;
      default:
        throw new Error(`unknown flag ${a}`);
    }
  }
  if (csvPaths.length === 0) {
    throw new Error("--csv is required");
  }
  if (!outPath) {
    throw new Error("--out is required");
  }
  return { csvPaths, x, y, groupBy, outPath, logY, title };
}

export function main(argv: string[]): number {
  try {
    const spec = parseArgs(argv);
    renderToFile(spec);
    console.log(`wrote ${spec.outPath}`);
    return 0;
  } catch (err) {
    if (err instanceof CsvError || err instanceof Error) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

const isMain = process.argv[1] && process.argv[1].endsWith("cli.js");
if (isMain) {
  process.exit(main(process.argv.slice(2)));
}
