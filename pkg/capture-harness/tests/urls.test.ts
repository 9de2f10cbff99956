import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { loadUrlList, parsePostUrl } from "../src/urls.js";

describe("parsePostUrl", () => {
  it("extracts twitter status ids", () => {
    const post = parsePostUrl(
      "https://twitter.com/BMW_LifeMorals/status/241301682477232128",
      "Twitter",
    );
    expect(post.account).toBe("BMW_LifeMorals");
    expect(post.postId).toBe("241301682477232128");
  });

  it("extracts instagram, facebook, truth social shapes", () => {
    expect(parsePostUrl("https://www.instagram.com/p/Cxy12ab/", "Instagram").postId).toBe(
      "Cxy12ab",
    );
    const fb = parsePostUrl("https://www.facebook.com/group/posts/777", "Facebook");
    expect(fb).toMatchObject({ account: "group", postId: "777" });
    const ts = parsePostUrl("https://truthsocial.com/@real/posts/9", "TruthSocial");
    expect(ts).toMatchObject({ account: "real", postId: "9" });
  });

  it("keeps unknown path shapes without ids", () => {
    const post = parsePostUrl("http://127.0.0.1:8000/whatever", "Twitter");
    expect(post.postId).toBeUndefined();
  });

  it("rejects non-urls with the line number", () => {
    expect(() => parsePostUrl("not a url", "Twitter", 3)).toThrow(/line 3/);
    expect(() => parsePostUrl("ftp://x/y", "Twitter", 4)).toThrow(/line 4/);
  });
});

describe("loadUrlList", () => {
  it("skips comments and blanks", () => {
    const dir = mkdtempSync(join(tmpdir(), "urls-"));
    const path = join(dir, "urls.txt");
    writeFileSync(
      path,
      "# corpus\n\nhttps://twitter.com/a_user/status/1\nhttps://twitter.com/a_user/status/2\n",
    );
    const urls = loadUrlList(path, "Twitter");
    expect(urls.map((u) => u.postId)).toEqual(["1", "2"]);
  });
});
