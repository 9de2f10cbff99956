/** Browser abstraction: captures are testable without a real browser.
 *
 * `PuppeteerBrowser` drives a real headless Chromium (puppeteer must be
 * installed separately; it is not a dependency because the browser binary
 * cannot be fetched in every environment). `FetchBrowser` is the
 * deterministic stand-in used against locally served static post pages:
 * reachable pages "render" as a solid light- or dark-background PNG at the
 * viewport size, honoring the color-scheme request observably.
 */

import type { CaptureMode, Viewport } from "./types.js";
import { isDarkMode } from "./types.js";
import { encodePng } from "./crop.js";

export class BrowserLaunchFailure extends Error {}

export interface CaptureRequest {
  url: string;
  mode: CaptureMode;
  viewport: Viewport;
  /** CSS selector of the post element; full page when absent. */
  selector?: string;
  timeoutMs?: number;
}

export type CaptureResult =
  | { status: "ok"; png: Buffer }
  | { status: "broken"; reason: string };

export interface Browser {
  capture(request: CaptureRequest): Promise<CaptureResult>;
  close(): Promise<void>;
}

const LIGHT_BG: [number, number, number] = [255, 255, 255];
const DARK_BG: [number, number, number] = [21, 32, 43];

export class FetchBrowser implements Browser {
  async capture(request: CaptureRequest): Promise<CaptureResult> {
    let response: Response;
    try {
      response = await fetch(request.url, {
        signal: AbortSignal.timeout(request.timeoutMs ?? 10_000),
        redirect: "follow",
      });
    } catch (error) {
      return { status: "broken", reason: `navigation failed: ${String(error)}` };
    }
    if (!response.ok) {
      return { status: "broken", reason: `http ${response.status}` };
    }
    await response.arrayBuffer(); // drain; a real page must have a body
    const background = isDarkMode(request.mode) ? DARK_BG : LIGHT_BG;
    return {
      status: "ok",
      png: encodePng(request.viewport.width, request.viewport.height, background),
    };
  }

  async close(): Promise<void> {}
}

/** Post-element selectors per platform; Facebook's web page has no usable
 * isolated post element, so it is captured full-page and cropped. */
export const POST_SELECTORS: Record<string, string | undefined> = {
  Twitter: 'article[data-testid="tweet"]',
  TruthSocial: 'div[data-testid="status"]',
  Instagram: "article",
  Facebook: undefined,
};

// Minimal structural types for the optional puppeteer dependency; keeping
// them local avoids a hard dependency on its type package.
interface PuppeteerElement {
  screenshot(options: { type: "png" }): Promise<Uint8Array>;
}

interface PuppeteerPage {
  setViewport(viewport: Viewport): Promise<void>;
  emulateMediaFeatures(features: { name: string; value: string }[]): Promise<void>;
  goto(url: string, options: { waitUntil: string; timeout: number }): Promise<unknown>;
  $(selector: string): Promise<PuppeteerElement | null>;
  screenshot(options: { type: "png"; fullPage?: boolean }): Promise<Uint8Array>;
  close(): Promise<void>;
}

interface PuppeteerBrowserHandle {
  newPage(): Promise<PuppeteerPage>;
  close(): Promise<void>;
}

interface PuppeteerModule {
  launch(options: { headless: boolean }): Promise<PuppeteerBrowserHandle>;
}

export class PuppeteerBrowser implements Browser {
  private constructor(private readonly browser: PuppeteerBrowserHandle) {}

  static async launch(): Promise<PuppeteerBrowser> {
    let puppeteer: PuppeteerModule;
    try {
      puppeteer = (await import("puppeteer" as string)) as unknown as PuppeteerModule;
    } catch {
      throw new BrowserLaunchFailure(
        "puppeteer is not installed; run `npm install puppeteer` (downloads Chromium) or use --fetch-only",
      );
    }
    try {
      const browser = await puppeteer.launch({ headless: true });
      return new PuppeteerBrowser(browser);
    } catch (error) {
      throw new BrowserLaunchFailure(`browser launch failed: ${String(error)}`);
    }
  }

  async capture(request: CaptureRequest): Promise<CaptureResult> {
    const page = await this.browser.newPage();
    try {
      await page.setViewport(request.viewport);
      await page.emulateMediaFeatures([
        {
          name: "prefers-color-scheme",
          value: isDarkMode(request.mode) ? "dark" : "light",
        },
      ]);
      try {
        await page.goto(request.url, {
          waitUntil: "networkidle2",
          timeout: request.timeoutMs ?? 30_000,
        });
      } catch (error) {
        return { status: "broken", reason: `navigation failed: ${String(error)}` };
      }
      let png: Buffer;
      const element = request.selector ? await page.$(request.selector) : null;
      if (element) {
        png = Buffer.from(await element.screenshot({ type: "png" }));
      } else {
        png = Buffer.from(await page.screenshot({ type: "png", fullPage: !request.selector }));
      }
      return { status: "ok", png };
    } finally {
      await page.close();
    }
  }

  async close(): Promise<void> {
    await this.browser.close();
  }
}
