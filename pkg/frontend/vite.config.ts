import { defineConfig } from "vitest/config";

// Dev server proxies API and media paths to a locally running backend.
export default defineConfig({
  server: {
    proxy: {
      "/api": "http://127.0.0.1:8300",
      "/media": "http://127.0.0.1:8300",
    },
  },
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
  },
});
